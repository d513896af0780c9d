//! Decide which four-codegree case a group belongs to.
//!
//! The decision procedure mirrors the structure of the classification: trivial
//! outs first (prime-power order, wrong codegree-set size), then the
//! nonsolvable fingerprint, then a split on the Fitting height of a solvable
//! group. Every structural predicate that was evaluated ends up in the
//! verdict's evidence list, and the final label is cross-validated against the
//! codegree-set shape the case predicts; a mismatch is an invariant violation,
//! never a silent fallback.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::builders::{self, BuiltGroup};
use crate::chartab::{self, ClassData};
use crate::error::{Error, Result};
use crate::fq;
use crate::group::PermGroup;
use crate::perm::gcd;
use crate::structure::{self, ChiefFactorModule, Quotient};

#[derive(Debug, Clone, Serialize)]
pub struct Evidence {
    pub predicate: String,
    pub result: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseVerdict {
    pub label: String,
    #[serde(rename = "codSet")]
    pub cod_set: Vec<u64>,
    pub evidence: Vec<Evidence>,
}

pub fn classify(g: &PermGroup) -> Result<CaseVerdict> {
    classify_with_meta(g, &BTreeMap::new())
}

pub fn classify_built(b: &BuiltGroup) -> Result<CaseVerdict> {
    classify_with_meta(&b.group, &b.meta)
}

fn note(ev: &mut Vec<Evidence>, predicate: &str, result: impl ToString, witness: Option<String>) {
    ev.push(Evidence {
        predicate: predicate.to_string(),
        result: result.to_string(),
        witness,
    });
}

fn fmt_set(s: &[u64]) -> String {
    let inner: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn powu(base: u64, exp: u64) -> Result<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .ok_or_else(|| Error::Capacity("codegree value overflows u64".into()))?;
    }
    Ok(acc)
}

fn exact_sqrt(n: u64) -> Option<u64> {
    let mut lo = 0u64;
    let mut hi = 1u64 << 32;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if mid * mid < n {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if lo * lo == n {
        Some(lo)
    } else {
        None
    }
}

/// Invariant check: each case predicts its codegree set exactly.
fn expect_cod(ev: &mut Vec<Evidence>, label: &str, got: &[u64], mut want: Vec<u64>) -> Result<()> {
    want.sort_unstable();
    want.dedup();
    note(
        ev,
        "expectedCodSet",
        fmt_set(&want),
        Some(format!("case {}", label)),
    );
    if got != want.as_slice() {
        return Err(Error::Invariant(format!(
            "{}: computed codegree set {} does not match the predicted {}",
            label,
            fmt_set(got),
            fmt_set(&want)
        )));
    }
    Ok(())
}

fn require(ev: &mut Vec<Evidence>, label: &str, predicate: &str, ok: bool) -> Result<()> {
    note(ev, predicate, ok, None);
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant(format!(
            "{}: predicate '{}' failed",
            label, predicate
        )))
    }
}

fn verdict(label: &str, cod: Vec<u64>, ev: Vec<Evidence>) -> CaseVerdict {
    CaseVerdict {
        label: label.to_string(),
        cod_set: cod,
        evidence: ev,
    }
}

fn classify_with_meta(g: &PermGroup, meta: &BTreeMap<String, PermGroup>) -> Result<CaseVerdict> {
    let report = chartab::codegree_report(g)?;
    let cod = report.cod_set.clone();
    let mut ev = Vec::new();
    note(&mut ev, "codSetSize", cod.len(), Some(fmt_set(&cod)));

    let primes = structure::factorize(g.order());
    // Prime powers are out of scope regardless of the codegree count; the
    // size evidence above still records whether four codegrees appeared.
    if primes.len() == 1 {
        note(&mut ev, "primePowerOrder", true, Some(g.order().to_string()));
        return Ok(verdict("PrimePowerOutOfScope", cod, ev));
    }
    note(&mut ev, "primePowerOrder", false, Some(g.order().to_string()));
    if cod.len() != 4 {
        return Ok(verdict("NotFourCodegrees", cod, ev));
    }

    if !structure::is_solvable(g)? {
        return case7(g, cod, ev);
    }

    let h = structure::fitting_height(g)?;
    note(&mut ev, "fittingHeight", h, None);
    match h {
        1 => case1(g, cod, ev),
        2 => classify_height_two(g, meta, cod, ev),
        3 => case6(g, cod, ev),
        other => Err(Error::Invariant(format!(
            "solvable group with four codegrees has Fitting height {}, expected 1, 2 or 3",
            other
        ))),
    }
}

/// Nonsolvable: must be SL(2, 2^f) up to the invariants that pin it down —
/// order 2^f(2^{2f}-1), perfect, and the codegree set {1, 2^{2f}-2^f,
/// 2^{2f}+2^f, 2^{2f}-1}. The classification guarantees no nonsolvable
/// impostor with four codegrees exists, so this fingerprint is decisive.
fn case7(g: &PermGroup, cod: Vec<u64>, mut ev: Vec<Evidence>) -> Result<CaseVerdict> {
    let order = g.order();
    let mut f = 2u32;
    let t = loop {
        let t = 1u64 << f;
        let val = t * (t * t - 1);
        if val == order {
            break t;
        }
        if val > order {
            return Err(Error::Invariant(format!(
                "nonsolvable group of order {} with four codegrees: order is not 2^f(2^(2f)-1)",
                order
            )));
        }
        f += 1;
    };
    note(&mut ev, "orderIs2fTimes2to2fMinus1", true, Some(format!("f = {}", f)));
    let perfect = structure::derived_subgroup(g)?.order() == order;
    require(&mut ev, "Case7", "perfect", perfect)?;
    expect_cod(
        &mut ev,
        "Case7",
        &cod,
        vec![1, t * t - t, t * t + t, t * t - 1],
    )?;
    note(&mut ev, "identifiedByInvariantsOnly", true, None);
    Ok(verdict("Case7", cod, ev))
}

/// Fitting height 1: nilpotent, so the group itself must be a direct product
/// of two elementary abelian groups for distinct primes.
fn case1(g: &PermGroup, cod: Vec<u64>, mut ev: Vec<Evidence>) -> Result<CaseVerdict> {
    require(&mut ev, "Case1", "abelian", g.is_abelian())?;
    let primes = structure::factorize(g.order());
    require(&mut ev, "Case1", "exactlyTwoPrimes", primes.len() == 2)?;
    let (p, q) = (primes[0].0, primes[1].0);
    require(
        &mut ev,
        "Case1",
        "squarefreeExponent",
        g.exponent()? == p * q,
    )?;
    expect_cod(&mut ev, "Case1", &cod, vec![1, p, q, p * q])?;
    Ok(verdict("Case1", cod, ev))
}

/// Fitting height 3: the series 1 < V < K < G with K the nilpotent residual
/// of G and V the nilpotent residual of K must be a two-step Frobenius tower.
fn case6(g: &PermGroup, cod: Vec<u64>, mut ev: Vec<Evidence>) -> Result<CaseVerdict> {
    let k = structure::nilpotent_residual(g)?;
    let v = structure::nilpotent_residual(&k)?;
    note(&mut ev, "residualOrders", format!("|K| = {}, |V| = {}", k.order(), v.order()), None);
    let p = g.order() / k.order();
    let q = k.order() / v.order();
    require(&mut ev, "Case6", "topQuotientPrimeOrder", fq::is_prime(p))?;
    require(&mut ev, "Case6", "middleLayerPrimeOrder", fq::is_prime(q))?;
    let (r, rank) = structure::elementary_abelian_rank(&v)?
        .ok_or_else(|| Error::Invariant("Case6: V is not elementary abelian".into()))?;
    note(&mut ev, "kernelShape", format!("elementary abelian {}^{}", r, rank), None);
    require(&mut ev, "Case6", "rankDivisibleByP", u64::from(rank) % p == 0)?;
    let m = u64::from(rank) / p;
    let denom = powu(r, m)? - 1;
    let numer = powu(r, u64::from(rank))? - 1;
    require(
        &mut ev,
        "Case6",
        "middlePrimeIsCyclotomicQuotient",
        numer % denom == 0 && numer / denom == q,
    )?;
    let quo = Quotient::new(g, &v)?;
    require(
        &mut ev,
        "Case6",
        "quotientByVFrobeniusOfOrderPQ",
        quo.group.order() == p * q && !quo.group.is_abelian(),
    )?;
    let cq = structure::sylow_subgroup(&k, q)?;
    let factors = structure::chief_factors_in_kernel(&k, &v, &cq)?;
    require(&mut ev, "Case6", "vMinimalNormalInK", factors.len() == 1)?;
    expect_cod(&mut ev, "Case6", &cod, vec![1, p, q, p * powu(r, u64::from(rank))?])?;
    Ok(verdict("Case6", cod, ev))
}

/// Largest normal subgroup of G contained in `sub` (which must lie in G).
fn g_core(g: &PermGroup, sub: &PermGroup) -> Result<PermGroup> {
    let mut core = sub.clone();
    loop {
        let mut next = core.clone();
        for t in g.generators() {
            let conj = g.subgroup(
                core.generators()
                    .iter()
                    .map(|x| x.conjugate_by(t))
                    .collect(),
            );
            next = structure::intersection(&next, &conj)?;
        }
        if next.order() == core.order() {
            return Ok(core);
        }
        core = next;
    }
}

fn iso_class_count(factors: &[ChiefFactorModule]) -> Result<usize> {
    let mut reps: Vec<&ChiefFactorModule> = Vec::new();
    'outer: for f in factors {
        for r in &reps {
            if r.q == f.q && r.dim == f.dim && fq::are_isomorphic(&r.module, &f.module)? {
                continue 'outer;
            }
        }
        reps.push(f);
    }
    Ok(reps.len())
}

/// Is N/N' homogeneous as a module for the complement, i.e. are all chief
/// factors of G between N' and N isomorphic?
fn quotient_homogeneous(
    g: &PermGroup,
    n: &PermGroup,
    nd: &PermGroup,
    p: &PermGroup,
) -> Result<bool> {
    let quo = Quotient::new(g, nd)?;
    let nbar = quo.group.subgroup(
        n.generators()
            .iter()
            .map(|x| quo.induced(x))
            .collect::<Result<Vec<_>>>()?,
    );
    let pbar = quo.group.subgroup(
        p.generators()
            .iter()
            .map(|x| quo.induced(x))
            .collect::<Result<Vec<_>>>()?,
    );
    let factors = structure::chief_factors_in_kernel(&quo.group, &nbar, &pbar)?;
    Ok(iso_class_count(&factors)? == 1)
}

fn classify_height_two(
    g: &PermGroup,
    meta: &BTreeMap<String, PermGroup>,
    cod: Vec<u64>,
    mut ev: Vec<Evidence>,
) -> Result<CaseVerdict> {
    // Metadata wins when a builder recorded the kernel/complement roles;
    // otherwise derive them (nilpotent residual, Sylow fallback).
    let n = match meta.get("N") {
        Some(m) => m.clone(),
        None => structure::nilpotent_residual(g)?,
    };
    if !g.is_normal(&n)? || n.order() <= 1 || n.order() >= g.order() {
        return Err(Error::Invariant(
            "height-two split needs a proper nontrivial normal nilpotent residual".into(),
        ));
    }
    let idx = g.order() / n.order();
    let idx_primes = structure::factorize(idx);
    if idx_primes.len() != 1 {
        return Err(Error::Invariant(format!(
            "height-two group: |G:N| = {} is not a prime power",
            idx
        )));
    }
    let p = idx_primes[0].0;
    if gcd(n.order(), p) != 1 {
        return Err(Error::Invariant(
            "height-two group: complement order is not coprime to the kernel".into(),
        ));
    }
    let pgrp = match meta.get("P") {
        Some(m) if m.order() == idx => m.clone(),
        _ => structure::sylow_subgroup(g, p)?,
    };
    if pgrp.order() != idx || structure::intersection(&n, &pgrp)?.order() != 1 {
        return Err(Error::Invariant(
            "height-two group: Sylow subgroup does not complement the residual".into(),
        ));
    }
    note(
        &mut ev,
        "kernelComplementOrders",
        format!("|N| = {}, |P| = {}", n.order(), pgrp.order()),
        None,
    );

    let c = structure::centralizer_of_subgroup(&pgrp, &n)?;
    note(&mut ev, "centralizerOfKernelInComplement", c.order(), None);
    if c.order() > 1 {
        return case5(g, &n, &pgrp, &c, p, cod, ev);
    }
    if structure::is_frobenius(g, &n, &pgrp)? {
        note(&mut ev, "frobenius", true, None);
        return classify_frobenius(g, &n, &pgrp, p, cod, ev);
    }
    note(&mut ev, "frobenius", false, None);
    if small_nonnormal_centralizers(g, &n, &pgrp)? {
        note(&mut ev, "allKernelElementCentralizersOrderTwoNonNormal", true, None);
        return case4(g, &n, &pgrp, cod, ev);
    }
    note(&mut ev, "allKernelElementCentralizersOrderTwoNonNormal", false, None);
    case3(g, &n, &pgrp, p, cod, ev)
}

fn kernel_prime(n: &PermGroup) -> Result<u64> {
    let qs = structure::factorize(n.order());
    if qs.len() != 1 {
        return Err(Error::Invariant(
            "height-two kernel is not a group of prime-power order".into(),
        ));
    }
    Ok(qs[0].0)
}

/// Direct-factor case: G = H x C with C = C_P(N) elementary abelian and
/// H Frobenius with kernel N and a complement of order p inside P.
fn case5(
    g: &PermGroup,
    n: &PermGroup,
    pgrp: &PermGroup,
    c: &PermGroup,
    p: u64,
    cod: Vec<u64>,
    mut ev: Vec<Evidence>,
) -> Result<CaseVerdict> {
    require(
        &mut ev,
        "Case5",
        "complementElementaryAbelian",
        pgrp.is_abelian() && pgrp.exponent()? == p,
    )?;
    require(&mut ev, "Case5", "centralFactorIndexP", pgrp.order() / c.order() == p)?;
    require(&mut ev, "Case5", "kernelAbelian", n.is_abelian())?;
    let mut pick = None;
    for x in pgrp.elements()? {
        if x.order() == p && !c.contains(&x)? {
            pick = Some(x);
            break;
        }
    }
    let x = pick.ok_or_else(|| {
        Error::Invariant("Case5: no order-p element of P outside the central factor".into())
    })?;
    let xs = g.subgroup(vec![x.clone()]);
    let mut hgens = n.generators().to_vec();
    hgens.push(x);
    let h = g.subgroup(hgens);
    require(
        &mut ev,
        "Case5",
        "frobeniusDirectFactor",
        structure::is_frobenius(&h, n, &xs)?,
    )?;
    let q = kernel_prime(n)?;
    let d = fq::mult_order(q, p)?;
    note(&mut ev, "chiefFactorDimension", d, Some(format!("multOrder({}, {})", q, p)));
    let qd = powu(q, d)?;
    expect_cod(&mut ev, "Case5", &cod, vec![1, p, qd, p * qd])?;
    Ok(verdict("Case5", cod, ev))
}

/// The Frobenius branch: split into cases 2a-2f on the shape of the
/// complement and of the kernel.
fn classify_frobenius(
    g: &PermGroup,
    n: &PermGroup,
    pgrp: &PermGroup,
    p: u64,
    cod: Vec<u64>,
    mut ev: Vec<Evidence>,
) -> Result<CaseVerdict> {
    let q = kernel_prime(n)?;

    if builders::fingerprint(pgrp)? == builders::expected_fingerprint("Q8").unwrap() {
        note(&mut ev, "complementIsQ8", true, None);
        require(
            &mut ev,
            "Case2a",
            "kernelIsCqSquared",
            structure::elementary_abelian_rank(n)? == Some((q, 2)),
        )?;
        expect_cod(&mut ev, "Case2a", &cod, vec![1, 2, 4, q * q])?;
        return Ok(verdict("Case2a", cod, ev));
    }

    if pgrp.order() == p * p && pgrp.exponent()? == p * p {
        note(&mut ev, "complementCyclicOrderPSquared", true, None);
        let d = fq::mult_order(q, p * p)?;
        note(&mut ev, "chiefFactorDimension", d, Some(format!("multOrder({}, {})", q, p * p)));
        require(
            &mut ev,
            "Case2b",
            "kernelElementaryAbelian",
            structure::elementary_abelian_rank(n)?.is_some(),
        )?;
        let factors = structure::chief_factors_in_kernel(g, n, pgrp)?;
        require(
            &mut ev,
            "Case2b",
            "chiefFactorsHomogeneousOfDimensionD",
            factors.iter().all(|f| f.dim as u64 == d) && iso_class_count(&factors)? == 1,
        )?;
        expect_cod(&mut ev, "Case2b", &cod, vec![1, p, p * p, powu(q, d)?])?;
        return Ok(verdict("Case2b", cod, ev));
    }

    if pgrp.order() != p {
        return Err(Error::Invariant(format!(
            "Frobenius complement of order {} matches none of the four-codegree shapes",
            pgrp.order()
        )));
    }
    let d = fq::mult_order(q, p)?;
    note(&mut ev, "chiefFactorDimension", d, Some(format!("multOrder({}, {})", q, p)));

    if n.is_abelian() {
        let factors = structure::chief_factors_in_kernel(g, n, pgrp)?;
        require(
            &mut ev,
            "Case2c/2d",
            "chiefFactorDimensionsEqualD",
            factors.iter().all(|f| f.dim as u64 == d),
        )?;
        let classes = iso_class_count(&factors)?;
        note(&mut ev, "chiefFactorIsoClasses", classes, None);
        if n.exponent()? == q * q {
            note(&mut ev, "kernelExponent", q * q, None);
            require(&mut ev, "Case2c", "chiefFactorsPairwiseIsomorphic", classes == 1)?;
            expect_cod(&mut ev, "Case2c", &cod, vec![1, p, powu(q, d)?, powu(q, 2 * d)?])?;
            return Ok(verdict("Case2c", cod, ev));
        }
        require(
            &mut ev,
            "Case2d",
            "kernelElementaryAbelian",
            structure::elementary_abelian_rank(n)?.is_some(),
        )?;
        require(&mut ev, "Case2d", "exactlyTwoIsoClassesOfChiefFactors", classes == 2)?;
        expect_cod(&mut ev, "Case2d", &cod, vec![1, p, powu(q, d)?, powu(q, 2 * d)?])?;
        return Ok(verdict("Case2d", cod, ev));
    }

    // Nonabelian kernel: 2e (ultraspecial quotients, the stronger structural
    // statement) is tested first; 2f is the fall-through on codegree shape.
    note(&mut ev, "kernelAbelian", false, None);
    let nd = structure::derived_subgroup(n)?;
    let ntable = chartab::char_table(ClassData::new(n)?)?;
    // For each nonlinear character of N: the largest G-normal subgroup inside
    // its kernel, which is the kernel of the induced character.
    let mut induced: Vec<(u64, PermGroup)> = Vec::new();
    for i in 0..ntable.count() {
        if ntable.degrees[i] == 1 {
            continue;
        }
        let (ker, _) = ntable.kernel_of_character(i)?;
        induced.push((ntable.degrees[i], g_core(g, &ker)?));
    }

    let q3d = powu(q, 3 * d)?;
    let mut all_ultra = true;
    for (_, core) in &induced {
        let quo = Quotient::new(n, core)?;
        if quo.group.order() != q3d || !structure::is_ultraspecial(&quo.group)? {
            all_ultra = false;
            break;
        }
    }
    note(&mut ev, "inducedKernelQuotientsUltraspecialOfOrderQ3d", all_ultra, None);
    let nbar_exp = Quotient::new(n, &nd)?.group.exponent()?;
    note(&mut ev, "abelianizationExponent", nbar_exp, None);
    if all_ultra && (nbar_exp == q || nbar_exp == q * q) {
        expect_cod(&mut ev, "Case2e", &cod, vec![1, p, powu(q, d)?, powu(q, 2 * d)?])?;
        return Ok(verdict("Case2e", cod, ev));
    }

    require(
        &mut ev,
        "Case2f",
        "abelianizationHomogeneous",
        quotient_homogeneous(g, n, &nd, pgrp)?,
    )?;
    let mut shared: Option<u64> = None;
    for (deg, core) in &induced {
        let idx = n.order() / core.order();
        if idx % deg != 0 {
            return Err(Error::Invariant(
                "Case2f: induced-character codegree is not an integer".into(),
            ));
        }
        let c = idx / deg;
        match shared {
            None => shared = Some(c),
            Some(s) if s == c => {}
            Some(s) => {
                return Err(Error::Invariant(format!(
                    "Case2f: nonlinear characters give distinct codegrees {} and {}",
                    s, c
                )));
            }
        }
    }
    let qk = shared
        .ok_or_else(|| Error::Invariant("Case2f: nonabelian kernel without nonlinear characters".into()))?;
    let mut k = 0u64;
    let mut acc = 1u64;
    while acc < qk {
        acc *= q;
        k += 1;
    }
    require(&mut ev, "Case2f", "sharedCodegreeIsPowerOfQ", acc == qk)?;
    require(&mut ev, "Case2f", "sharedCodegreeExceedsQtoD", k > d)?;
    // The classification leaves the exact exponent k open; record it.
    note(&mut ev, "sharedNonlinearCodegree", qk, Some(format!("k = {}", k)));
    expect_cod(&mut ev, "Case2f", &cod, vec![1, p, powu(q, d)?, qk])?;
    Ok(verdict("Case2f", cod, ev))
}

/// Does every nontrivial element of N have a centralizer in P of order
/// exactly two that is not normal in P?
fn small_nonnormal_centralizers(
    _g: &PermGroup,
    n: &PermGroup,
    pgrp: &PermGroup,
) -> Result<bool> {
    let pelems = pgrp.elements()?;
    for x in n.elements()? {
        if x.is_identity() {
            continue;
        }
        let cents: Vec<_> = pelems
            .iter()
            .filter(|y| x.compose(y) == y.compose(&x))
            .cloned()
            .collect();
        if cents.len() != 2 {
            return Ok(false);
        }
        let inv = cents.into_iter().find(|y| !y.is_identity()).unwrap();
        if pgrp.is_normal(&pgrp.subgroup(vec![inv]))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Non-Frobenius actions whose point stabilizers in the complement are all of
/// order two: the complement is one of three specific 2-groups, each paired
/// with a fixed kernel and a literal codegree set.
fn case4(
    g: &PermGroup,
    n: &PermGroup,
    pgrp: &PermGroup,
    cod: Vec<u64>,
    mut ev: Vec<Evidence>,
) -> Result<CaseVerdict> {
    let _ = g;
    let fp = builders::fingerprint(pgrp)?;
    let rank = structure::elementary_abelian_rank(n)?;
    let (label, want_name, want_rank, want_cod): (&str, &str, (u64, u32), Vec<u64>) =
        if Some(fp) == builders::expected_fingerprint("D8") {
            ("Case4a", "D8", (3, 2), vec![1, 2, 4, 18])
        } else if Some(fp) == builders::expected_fingerprint("SmallGroup(16,13)") {
            ("Case4b", "SmallGroup(16,13)", (5, 2), vec![1, 2, 8, 50])
        } else if Some(fp) == builders::expected_fingerprint("ES(2^5-)") {
            ("Case4c", "ES(2^5-)", (3, 4), vec![1, 2, 8, 162])
        } else {
            return Err(Error::Invariant(format!(
                "complement fingerprint {:?} matches none of the three order-two-centralizer shapes",
                fp
            )));
        };
    note(&mut ev, "complementFingerprint", want_name, Some(format!("{:?}", fp)));
    require(&mut ev, label, "kernelShape", rank == Some(want_rank))?;
    expect_cod(&mut ev, label, &cod, want_cod)?;
    Ok(verdict(label, cod, ev))
}

/// Semi-extraspecial kernel with derived subgroup equal to the center of G
/// and homogeneous abelianization.
fn case3(
    g: &PermGroup,
    n: &PermGroup,
    pgrp: &PermGroup,
    p: u64,
    cod: Vec<u64>,
    mut ev: Vec<Evidence>,
) -> Result<CaseVerdict> {
    require(&mut ev, "Case3", "complementPrimeOrder", pgrp.order() == p)?;
    require(
        &mut ev,
        "Case3",
        "kernelSemiExtraspecial",
        structure::is_semi_extraspecial(n)?,
    )?;
    let nd = structure::derived_subgroup(n)?;
    let zg = structure::center(g)?;
    require(
        &mut ev,
        "Case3",
        "kernelDerivedEqualsCenterOfG",
        nd.order() == zg.order() && zg.contains_group(&nd)?,
    )?;
    require(
        &mut ev,
        "Case3",
        "abelianizationHomogeneous",
        quotient_homogeneous(g, n, &nd, pgrp)?,
    )?;
    let q = kernel_prime(n)?;
    let d = fq::mult_order(q, p)?;
    note(&mut ev, "chiefFactorDimension", d, Some(format!("multOrder({}, {})", q, p)));
    let s = exact_sqrt(n.order() / nd.order()).ok_or_else(|| {
        Error::Invariant("Case3: |N:N'| is not a perfect square".into())
    })?;
    expect_cod(&mut ev, "Case3", &cod, vec![1, p, powu(q, d)?, p * q * s])?;
    Ok(verdict("Case3", cod, ev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::build;
    use crate::dsl::parse_spec;

    fn classify_spec(text: &str) -> CaseVerdict {
        let built = build(&parse_spec(text).unwrap()).unwrap();
        classify_built(&built).unwrap()
    }

    #[test]
    fn abelian_two_prime_group_is_case_one() {
        let v = classify_spec("dirprod(elemab(2,1),elemab(3,1))");
        assert_eq!(v.label, "Case1");
        assert_eq!(v.cod_set, vec![1, 2, 3, 6]);
    }

    #[test]
    fn quaternion_action_is_case_two_a() {
        let v = classify_spec("named(\"Q8onCq2\",3)");
        assert_eq!(v.label, "Case2a");
        assert_eq!(v.cod_set, vec![1, 2, 4, 9]);
    }

    #[test]
    fn singer_cycle_of_order_four_is_case_two_b() {
        let v = classify_spec("frobsinger(4,3,1)");
        assert_eq!(v.label, "Case2b");
        assert_eq!(v.cod_set, vec![1, 2, 4, 9]);
    }

    #[test]
    fn inverted_c_nine_is_case_two_c() {
        let v = classify_spec("named(\"HomocyclicInv\",3,2,1)");
        assert_eq!(v.label, "Case2c");
        assert_eq!(v.cod_set, vec![1, 2, 3, 9]);
    }

    #[test]
    fn two_inequivalent_eigenlines_are_case_two_d() {
        let v = classify_spec(
            "sdp(7,2,[[[2,0],[0,4]]],complement=\"C3\")",
        );
        assert_eq!(v.label, "Case2d");
        assert_eq!(v.cod_set, vec![1, 3, 7, 49]);
    }

    #[test]
    fn special_linear_two_three_is_case_three() {
        let v = classify_spec("named(\"SL2of3\")");
        assert_eq!(v.label, "Case3");
        assert_eq!(v.cod_set, vec![1, 3, 4, 12]);
    }

    #[test]
    fn dihedral_action_is_case_four_a() {
        let v = classify_spec("named(\"D8onC3sq\")");
        assert_eq!(v.label, "Case4a");
        assert_eq!(v.cod_set, vec![1, 2, 4, 18]);
    }

    #[test]
    fn frobenius_times_central_factor_is_case_five() {
        let v = classify_spec("dirprod(frobsinger(3,7,1),cyclic(3))");
        assert_eq!(v.label, "Case5");
        assert_eq!(v.cod_set, vec![1, 3, 7, 21]);
    }

    #[test]
    fn symmetric_four_is_case_six() {
        let v = classify_spec("named(\"TwoStepFrobenius\",2,3,2,1)");
        assert_eq!(v.label, "Case6");
        assert_eq!(v.cod_set, vec![1, 2, 3, 8]);
    }

    #[test]
    fn special_linear_over_f4_is_case_seven() {
        let v = classify_spec("sl2(2)");
        assert_eq!(v.label, "Case7");
        assert_eq!(v.cod_set, vec![1, 12, 15, 20]);
    }

    #[test]
    fn six_codegrees_are_rejected() {
        let v = classify_spec("dirprod(cyclic(4),cyclic(3))");
        assert_eq!(v.label, "NotFourCodegrees");
        assert_eq!(v.cod_set.len(), 6);
    }

    #[test]
    fn prime_power_order_is_out_of_scope() {
        let q8 = PermGroup::from_cycle_strings(
            8,
            &["(0 1 2 3)(4 6 5 7)", "(0 4 2 5)(1 7 3 6)"],
        )
        .unwrap();
        assert_eq!(q8.order(), 8);
        let v = classify(&q8).unwrap();
        assert_eq!(v.label, "PrimePowerOutOfScope");

        let d8 = PermGroup::from_cycle_strings(4, &["(0 1 2 3)", "(1 3)"]).unwrap();
        let v = classify(&d8).unwrap();
        assert_eq!(v.label, "PrimePowerOutOfScope");
        // three codegrees, recorded as evidence
        assert_eq!(v.cod_set.len(), 3);
        assert!(v
            .evidence
            .iter()
            .any(|e| e.predicate == "codSetSize" && e.result == "3"));
    }
}
