//! Builders turning a `GroupSpec` into an explicit permutation group with
//! decomposition metadata (which subgroup plays N, P, K, V, ...).
//!
//! Semidirect products use the affine realization: the kernel acts on the
//! q^dim vectors of F_q^dim by translation, the complement by its matrices.
//! Vectors are numbered lexicographically with coordinate 0 most significant.

use std::collections::BTreeMap;

use crate::dsl::GroupSpec;
use crate::error::{Error, Result};
use crate::fq::{self, FqMatrix};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::structure;

#[derive(Debug, Clone)]
pub struct BuiltGroup {
    pub group: PermGroup,
    /// role -> subgroup; roles used: "N", "P", "K", "V", "A", "B".
    pub meta: BTreeMap<String, PermGroup>,
    pub family: String,
    pub expected_case: Option<String>,
}

/// (order, exponent, |derived|, |center|, involution count) — enough to pin
/// down every complement type the families use, without isomorphism testing.
pub type Fingerprint = (u64, u64, u64, u64, u64);

pub fn fingerprint(g: &PermGroup) -> Result<Fingerprint> {
    let involutions = g.elements()?.iter().filter(|x| x.order() == 2).count() as u64;
    Ok((
        g.order(),
        g.exponent()?,
        structure::derived_subgroup(g)?.order(),
        structure::center(g)?.order(),
        involutions,
    ))
}

pub fn expected_fingerprint(name: &str) -> Option<Fingerprint> {
    match name {
        "D8" => Some((8, 4, 2, 2, 5)),
        "Q8" => Some((8, 4, 2, 2, 1)),
        "SmallGroup(16,13)" => Some((16, 4, 2, 4, 7)),
        "ES(2^5-)" => Some((32, 4, 2, 2, 11)),
        _ => None,
    }
}

fn validate_complement(p: &PermGroup, name: &str) -> Result<()> {
    if let Some(rest) = name.strip_prefix('C') {
        if let Ok(n) = rest.parse::<u64>() {
            if p.order() == n && p.exponent()? == n {
                return Ok(());
            }
            return Err(Error::Input(format!(
                "complement has order {} and exponent {}, not cyclic of order {}",
                p.order(),
                p.exponent()?,
                n
            )));
        }
    }
    let want = expected_fingerprint(name)
        .ok_or_else(|| Error::Input(format!("unknown complement type '{}'", name)))?;
    let got = fingerprint(p)?;
    if got != want {
        return Err(Error::Input(format!(
            "complement fingerprint {:?} does not match {} {:?}",
            got, name, want
        )));
    }
    Ok(())
}

/// Lexicographic index of v in F_q^dim, coordinate 0 most significant.
fn vec_index(v: &[u64], q: u64) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

fn index_vec(mut i: usize, q: u64, dim: usize) -> Vec<u64> {
    let mut v = vec![0u64; dim];
    for slot in v.iter_mut().rev() {
        *slot = (i % q as usize) as u64;
        i /= q as usize;
    }
    v
}

fn points(q: u64, dim: usize) -> Result<usize> {
    let mut n = 1usize;
    for _ in 0..dim {
        n = n
            .checked_mul(q as usize)
            .filter(|&n| n <= 1 << 20)
            .ok_or_else(|| Error::Capacity(format!("q^dim = {}^{} is too large", q, dim)))?;
    }
    Ok(n)
}

/// Translation by the i-th standard basis vector.
fn translation(q: u64, dim: usize, i: usize) -> Permutation {
    let n = points(q, dim).unwrap();
    let images = (0..n)
        .map(|pt| {
            let mut v = index_vec(pt, q, dim);
            v[i] = (v[i] + 1) % q;
            vec_index(&v, q)
        })
        .collect();
    Permutation::from_images(images).unwrap()
}

/// The permutation v -> M v on F_q^dim points.
fn matrix_perm(m: &FqMatrix) -> Result<Permutation> {
    let q = m.q;
    let dim = m.rows;
    if m.det() == 0 {
        return Err(Error::Input("action matrix is singular".into()));
    }
    let n = points(q, dim)?;
    let images = (0..n).map(|pt| vec_index(&m.apply(&index_vec(pt, q, dim)), q)).collect();
    Permutation::from_images(images)
}

/// Affine group: translations of F_q^dim (role N) extended by matrices
/// (role P).
fn affine_build(q: u64, dim: usize, matrices: &[FqMatrix]) -> Result<(PermGroup, PermGroup, PermGroup)> {
    let n = points(q, dim)?;
    let trans: Vec<Permutation> = (0..dim).map(|i| translation(q, dim, i)).collect();
    let mats = matrices.iter().map(matrix_perm).collect::<Result<Vec<_>>>()?;
    let mut gens = trans.clone();
    gens.extend(mats.clone());
    let g = PermGroup::new(n, gens)?;
    let ngrp = g.subgroup(trans);
    let pgrp = g.subgroup(mats);
    Ok((g, ngrp, pgrp))
}

fn check_decomposition(g: &PermGroup, n: &PermGroup, p: &PermGroup) -> Result<()> {
    if !g.is_normal(n)? {
        return Err(Error::Invariant("built kernel is not normal".into()));
    }
    if n.order() * p.order() != g.order() || structure::intersection(n, p)?.order() != 1 {
        return Err(Error::Invariant("built group is not kernel x| complement".into()));
    }
    Ok(())
}

pub fn build(spec: &GroupSpec) -> Result<BuiltGroup> {
    match spec {
        GroupSpec::ElemAb { p, n } => elemab_build(*p, *n),
        GroupSpec::Cyclic { n } => cyclic_build(*n),
        GroupSpec::DirProd(a, b) => dirprod_build(&build(a)?, &build(b)?),
        GroupSpec::SdpMatrix { q, dim, matrices, complement } => {
            sdp_build(*q, *dim, matrices, complement)
        }
        GroupSpec::Sl2 { f } => sl2_build(*f),
        GroupSpec::FrobSinger { pk, q, copies } => frob_singer_build(*pk, *q, *copies),
        GroupSpec::Named { tag, params } => named_build(tag, params),
    }
}

fn elemab_build(p: u64, n: u32) -> Result<BuiltGroup> {
    if !fq::is_prime(p) {
        return Err(Error::Input(format!("{} is not prime", p)));
    }
    let deg = (p as usize) * n as usize;
    let gens: Vec<Permutation> = (0..n as usize)
        .map(|i| {
            let images = (0..deg)
                .map(|pt| {
                    if pt / p as usize == i {
                        i * p as usize + (pt + 1 - i * p as usize) % p as usize
                    } else {
                        pt
                    }
                })
                .collect();
            Permutation::from_images(images).unwrap()
        })
        .collect();
    Ok(BuiltGroup {
        group: PermGroup::new(deg, gens)?,
        meta: BTreeMap::new(),
        family: format!("elemab({},{})", p, n),
        expected_case: None,
    })
}

fn cyclic_build(n: u64) -> Result<BuiltGroup> {
    let deg = n as usize;
    let images = (0..deg).map(|i| (i + 1) % deg).collect();
    Ok(BuiltGroup {
        group: PermGroup::new(deg, vec![Permutation::from_images(images)?])?,
        meta: BTreeMap::new(),
        family: format!("cyclic({})", n),
        expected_case: None,
    })
}

fn embed(p: &Permutation, offset: usize, deg: usize) -> Permutation {
    let images = (0..deg)
        .map(|i| {
            if i >= offset && i < offset + p.degree() {
                offset + p.apply(i - offset)
            } else {
                i
            }
        })
        .collect();
    Permutation::from_images(images).unwrap()
}

fn dirprod_build(a: &BuiltGroup, b: &BuiltGroup) -> Result<BuiltGroup> {
    let da = a.group.degree();
    let deg = da + b.group.degree();
    let mut gens: Vec<Permutation> =
        a.group.generators().iter().map(|g| embed(g, 0, deg)).collect();
    gens.extend(b.group.generators().iter().map(|g| embed(g, da, deg)));
    let group = PermGroup::new(deg, gens)?;
    let sub_a =
        group.subgroup(a.group.generators().iter().map(|g| embed(g, 0, deg)).collect());
    let sub_b =
        group.subgroup(b.group.generators().iter().map(|g| embed(g, da, deg)).collect());
    let mut meta = BTreeMap::new();
    meta.insert("A".to_string(), sub_a);
    meta.insert("B".to_string(), sub_b);
    Ok(BuiltGroup {
        group,
        meta,
        family: format!("dirprod({},{})", a.family, b.family),
        expected_case: None,
    })
}

fn sdp_build(q: u64, dim: usize, matrices: &[Vec<Vec<u64>>], complement: &str) -> Result<BuiltGroup> {
    if !fq::is_prime(q) {
        return Err(Error::Input(format!("{} is not prime", q)));
    }
    let mats = matrices
        .iter()
        .map(|m| {
            let entries: Vec<u64> = m.iter().flatten().copied().collect();
            FqMatrix::new(q, dim, dim, entries)
        })
        .collect::<Result<Vec<_>>>()?;
    let (group, n, p) = affine_build(q, dim, &mats)?;
    validate_complement(&p, complement)?;
    check_decomposition(&group, &n, &p)?;
    let mut meta = BTreeMap::new();
    meta.insert("N".to_string(), n);
    meta.insert("P".to_string(), p);
    Ok(BuiltGroup {
        group,
        meta,
        family: format!("sdp({},{},{})", q, dim, complement),
        expected_case: None,
    })
}

/// GF(2^f) element as a bitmask of polynomial coefficients (bit i = coeff of
/// x^i), arithmetic modulo the least primitive polynomial.
struct F2f {
    f: u32,
    modulus: u64, // bitmask of x^f + c_{f-1} x^{f-1} + ... + c_0
}

impl F2f {
    fn new(f: u32) -> Result<F2f> {
        let size = 1u64 << f;
        let coeffs = fq::least_primitive_poly(2, f as usize, size)?;
        let mut modulus = 1u64 << f;
        for (i, &c) in coeffs.iter().enumerate() {
            modulus |= c << i;
        }
        Ok(F2f { f, modulus })
    }

    fn mul(&self, mut a: u64, mut b: u64) -> u64 {
        let mut acc = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & (1 << self.f) != 0 {
                a ^= self.modulus;
            }
        }
        acc
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        assert_ne!(a, 0);
        self.pow(a, (1 << self.f) - 2)
    }
}

/// SL2(2^f) on the 2^f + 1 projective points: point 0 is [1:0], point 1+a is
/// [a:1]. Generated by the transvection x -> x+1, the torus x -> g^2 x, and
/// the Weyl flip x -> 1/x.
fn sl2_build(f: u32) -> Result<BuiltGroup> {
    if !(2..=5).contains(&f) {
        return Err(Error::Input(format!("sl2 parameter {} outside the supported range 2..=5", f)));
    }
    let field = F2f::new(f)?;
    let qf = 1u64 << f;
    let deg = qf as usize + 1;
    // generator of the unit group: x itself (the polynomial is primitive)
    let g = 2u64 % qf; // bitmask of the polynomial "x"
    let transvection = mobius_perm(deg, |pt| pt.map(|x| x ^ 1));
    let g2 = field.mul(g, g);
    let torus = mobius_perm(deg, |pt| pt.map(|x| field.mul(g2, x)));
    let weyl = mobius_perm(deg, |pt| match pt {
        None => Some(0),
        Some(0) => None,
        Some(x) => Some(field.inv(x)),
    });
    let group = PermGroup::new(deg, vec![transvection, torus, weyl])?;
    let expect = qf * (qf * qf - 1);
    if group.order() != expect {
        return Err(Error::Invariant(format!(
            "projective realization has order {}, expected {}",
            group.order(),
            expect
        )));
    }
    Ok(BuiltGroup {
        group,
        meta: BTreeMap::new(),
        family: format!("sl2({})", f),
        expected_case: Some("7".to_string()),
    })
}

/// Encodes the projective line as: None = infinity (point 0), Some(x) = [x:1]
/// (point 1 + x).
fn mobius_perm(deg: usize, map: impl Fn(Option<u64>) -> Option<u64>) -> Permutation {
    let images = (0..deg)
        .map(|pt| {
            let src = if pt == 0 { None } else { Some(pt as u64 - 1) };
            match map(src) {
                None => 0,
                Some(y) => 1 + y as usize,
            }
        })
        .collect();
    Permutation::from_images(images).unwrap()
}

/// Frobenius group (C_q)^{t d} x| C_{pk}: the complement acts on t copies of
/// F_{q^d} via a Singer power of order exactly pk, d = multOrder(q, pk).
fn frob_singer_build(pk: u64, q: u64, t: u32) -> Result<BuiltGroup> {
    if !fq::is_prime(q) {
        return Err(Error::Input(format!("{} is not prime", q)));
    }
    let pf = structure::factorize(pk);
    if pf.len() != 1 {
        return Err(Error::Input(format!("complement order {} is not a prime power", pk)));
    }
    if crate::perm::gcd(pk, q) != 1 {
        return Err(Error::Input("complement and kernel primes must differ".into()));
    }
    let d = fq::mult_order(q, pk)? as usize;
    let singer = fq::singer_matrix(q, d)?;
    let qd = (0..d).fold(1u64, |acc, _| acc * q);
    let m = singer.pow((qd - 1) / pk);
    if m.mult_order_bounded(pk)? != pk {
        return Err(Error::Invariant("Singer power has the wrong order".into()));
    }
    // block-diagonal action on t copies
    let dim = d * t as usize;
    let mut block = FqMatrix::zero(q, dim, dim);
    for b in 0..t as usize {
        for i in 0..d {
            for j in 0..d {
                block.set(b * d + i, b * d + j, m.get(i, j));
            }
        }
    }
    let (group, n, p) = affine_build(q, dim, &[block])?;
    check_decomposition(&group, &n, &p)?;
    if !structure::is_frobenius(&group, &n, &p)? {
        return Err(Error::Invariant("Singer action has nontrivial fixed points".into()));
    }
    let expected_case = if pf[0].1 == 2 { Some("2b".to_string()) } else { None };
    let mut meta = BTreeMap::new();
    meta.insert("N".to_string(), n);
    meta.insert("P".to_string(), p);
    Ok(BuiltGroup { group, meta, family: format!("frobsinger({},{},{})", pk, q, t), expected_case })
}

/// Least solution [[a,b],[c,-a]] with a^2 + bc = -1 in F_q (a, then b
/// ascending; c determined).
fn sl2_involution_like(q: u64, skip: Option<&FqMatrix>) -> Result<FqMatrix> {
    for a in 0..q {
        for b in 1..q {
            let need = (q - 1 + q - a * a % q) % q; // bc = -1 - a^2
            let c = need * fq::inv_mod(b, q) % q;
            let m = FqMatrix::new(q, 2, 2, vec![a, b, c, (q - a) % q])?;
            if let Some(i) = skip {
                // the companion must anticommute with the first solution
                let ij = i.mul(&m);
                let ji = m.mul(i);
                if ji != ij.scale(q - 1) {
                    continue;
                }
            }
            return Ok(m);
        }
    }
    Err(Error::Input(format!("no quaternion embedding exists over F_{}", q)))
}

fn q8_on_cq2(q: u64) -> Result<BuiltGroup> {
    if !fq::is_prime(q) || q < 3 {
        return Err(Error::Input("Q8 action needs an odd prime field".into()));
    }
    let i = sl2_involution_like(q, None)?;
    let j = sl2_involution_like(q, Some(&i))?;
    let (group, n, p) = affine_build(q, 2, &[i, j])?;
    validate_complement(&p, "Q8")?;
    check_decomposition(&group, &n, &p)?;
    if !structure::is_frobenius(&group, &n, &p)? {
        return Err(Error::Invariant("Q8 affine action is not Frobenius".into()));
    }
    let mut meta = BTreeMap::new();
    meta.insert("N".to_string(), n);
    meta.insert("P".to_string(), p);
    Ok(BuiltGroup {
        group,
        meta,
        family: format!("Q8onCq2({})", q),
        expected_case: Some("2a".to_string()),
    })
}

fn named_build(tag: &str, params: &[u64]) -> Result<BuiltGroup> {
    let arity = |want: usize| -> Result<()> {
        if params.len() == want {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "named family {} takes {} parameter(s), got {}",
                tag,
                want,
                params.len()
            )))
        }
    };
    match tag {
        "Q8onCq2" => {
            arity(1)?;
            q8_on_cq2(params[0])
        }
        "D8onC3sq" => {
            arity(0)?;
            let mut b = sdp_build(
                3,
                2,
                &[vec![vec![0, 2], vec![1, 0]], vec![vec![1, 0], vec![0, 2]]],
                "D8",
            )?;
            b.family = "D8onC3sq".to_string();
            b.expected_case = Some("4a".to_string());
            Ok(b)
        }
        "Pauli16onC5sq" => {
            arity(0)?;
            let mut b = sdp_build(
                5,
                2,
                &[
                    vec![vec![0, 4], vec![1, 0]],
                    vec![vec![1, 0], vec![0, 4]],
                    vec![vec![2, 0], vec![0, 2]],
                ],
                "SmallGroup(16,13)",
            )?;
            b.family = "Pauli16onC5sq".to_string();
            b.expected_case = Some("4b".to_string());
            Ok(b)
        }
        "ESminus32onC3p4" => {
            arity(0)?;
            es_minus_32_on_c3p4()
        }
        "TwoStepFrobenius" => {
            arity(4)?;
            two_step_frobenius(params[0], params[1], params[2], params[3])
        }
        "HomocyclicInv" => {
            arity(3)?;
            homocyclic_inversion(params[0], params[1] as u32, params[2] as u32)
        }
        "SL2of3" => {
            arity(0)?;
            sl2_of_3()
        }
        other => Err(Error::Input(format!("unknown named family '{}'", other))),
    }
}

/// Central product D8 o Q8 (the minus-type extraspecial group of order 32)
/// acting on F_3^4 via the Kronecker product of the 2-dimensional actions.
fn es_minus_32_on_c3p4() -> Result<BuiltGroup> {
    let q = 3;
    let d8_a = FqMatrix::new(q, 2, 2, vec![0, 2, 1, 0])?;
    let d8_b = FqMatrix::new(q, 2, 2, vec![1, 0, 0, 2])?;
    let q8_i = sl2_involution_like(q, None)?;
    let q8_j = sl2_involution_like(q, Some(&q8_i))?;
    let id2 = FqMatrix::identity(q, 2);
    let mats =
        vec![d8_a.kron(&id2), d8_b.kron(&id2), id2.kron(&q8_i), id2.kron(&q8_j)];
    let (group, n, p) = affine_build(q, 4, &mats)?;
    validate_complement(&p, "ES(2^5-)")?;
    check_decomposition(&group, &n, &p)?;
    let mut meta = BTreeMap::new();
    meta.insert("N".to_string(), n);
    meta.insert("P".to_string(), p);
    Ok(BuiltGroup {
        group,
        meta,
        family: "ESminus32onC3p4".to_string(),
        expected_case: Some("4c".to_string()),
    })
}

/// Fitting-height-3 family: V = F_r^{pm} with a Singer power of order
/// q = (r^{pm}-1)/(r^m-1) (role K/V) normalized by the field automorphism
/// x -> x^{r^m} (role P).
fn two_step_frobenius(p: u64, q: u64, r: u64, m: u64) -> Result<BuiltGroup> {
    if !fq::is_prime(p) || !fq::is_prime(q) || !fq::is_prime(r) {
        return Err(Error::Input("TwoStepFrobenius parameters p, q, r must be prime".into()));
    }
    let pm = (p * m) as usize;
    let rm = (0..m).fold(1u64, |acc, _| acc * r);
    let rpm = (0..pm).fold(1u64, |acc, _| acc * r);
    if q != (rpm - 1) / (rm - 1) || (rpm - 1) % (rm - 1) != 0 {
        return Err(Error::Input(format!(
            "q = {} violates q = (r^pm - 1)/(r^m - 1) = {}/{}",
            q,
            rpm - 1,
            rm - 1
        )));
    }
    let singer = fq::singer_matrix(r, pm)?;
    let qgen = singer.pow((rpm - 1) / q);
    if qgen.mult_order_bounded(q)? != q {
        return Err(Error::Invariant("Singer power has wrong order".into()));
    }
    // Frobenius field automorphism x -> x^{r^m} as an F_r-linear matrix:
    // column i = coordinates of x^{i r^m}, read off Singer powers at e_0
    let mut frob = FqMatrix::zero(r, pm, pm);
    let mut e0 = vec![0u64; pm];
    e0[0] = 1;
    for i in 0..pm {
        let col = singer.pow(i as u64 * rm).apply(&e0);
        for (row, &v) in col.iter().enumerate() {
            frob.set(row, i, v);
        }
    }
    // the automorphism must normalize <qgen>
    let conj = frob.mul(&qgen).mul(&frob.inverse()?);
    let mut pow = qgen.clone();
    let mut found = false;
    for _ in 0..q {
        if pow == conj {
            found = true;
            break;
        }
        pow = pow.mul(&qgen);
    }
    if !found {
        return Err(Error::Invariant("field automorphism does not normalize the Singer power".into()));
    }
    let (group, v, _) = affine_build(r, pm, &[qgen.clone(), frob.clone()])?;
    let qperm = matrix_perm(&qgen)?;
    let fperm = matrix_perm(&frob)?;
    let k = {
        let mut gens: Vec<Permutation> = v.generators().to_vec();
        gens.push(qperm);
        group.subgroup(gens)
    };
    let pgrp = group.subgroup(vec![fperm]);
    if k.order() != v.order() * q {
        return Err(Error::Invariant("K = V . C_q has the wrong order".into()));
    }
    let mut meta = BTreeMap::new();
    meta.insert("V".to_string(), v);
    meta.insert("K".to_string(), k);
    meta.insert("P".to_string(), pgrp);
    Ok(BuiltGroup {
        group,
        meta,
        family: format!("TwoStepFrobenius({},{},{},{})", p, q, r, m),
        expected_case: Some("6".to_string()),
    })
}

/// (C_{q^e})^t extended by the inverting involution.
fn homocyclic_inversion(q: u64, e: u32, t: u32) -> Result<BuiltGroup> {
    if !fq::is_prime(q) || q == 2 {
        return Err(Error::Input("inversion family needs an odd prime".into()));
    }
    if e == 0 || t == 0 {
        return Err(Error::Input("inversion family needs e, t >= 1".into()));
    }
    let qe = (0..e).fold(1usize, |acc, _| acc * q as usize);
    let deg = qe * t as usize;
    let mut gens: Vec<Permutation> = (0..t as usize)
        .map(|b| {
            let images = (0..deg)
                .map(|pt| if pt / qe == b { b * qe + (pt % qe + 1) % qe } else { pt })
                .collect();
            Permutation::from_images(images).unwrap()
        })
        .collect();
    let inv = Permutation::from_images(
        (0..deg).map(|pt| (pt / qe) * qe + (qe - pt % qe) % qe).collect(),
    )?;
    let n_gens = gens.clone();
    gens.push(inv.clone());
    let group = PermGroup::new(deg, gens)?;
    let n = group.subgroup(n_gens);
    let p = group.subgroup(vec![inv]);
    check_decomposition(&group, &n, &p)?;
    let mut meta = BTreeMap::new();
    meta.insert("N".to_string(), n);
    meta.insert("P".to_string(), p);
    Ok(BuiltGroup {
        group,
        meta,
        family: format!("HomocyclicInv({},{},{})", q, e, t),
        expected_case: None,
    })
}

/// SL2(3) = Q8 x| C3, acting on the 8 nonzero vectors of F_3^2.
fn sl2_of_3() -> Result<BuiltGroup> {
    let q = 3u64;
    let i = sl2_involution_like(q, None)?;
    let j = sl2_involution_like(q, Some(&i))?;
    let c = FqMatrix::new(q, 2, 2, vec![1, 1, 0, 1])?;
    // nonzero vectors in lexicographic order
    let vecs: Vec<Vec<u64>> = (1..9usize).map(|k| index_vec(k, q, 2)).collect();
    let to_pt = |v: &[u64]| vec_index(v, q) - 1;
    let perm_of = |m: &FqMatrix| {
        Permutation::from_images(vecs.iter().map(|v| to_pt(&m.apply(v))).collect())
    };
    let (pi, pj, pc) = (perm_of(&i)?, perm_of(&j)?, perm_of(&c)?);
    let group = PermGroup::new(8, vec![pi.clone(), pj.clone(), pc.clone()])?;
    if group.order() != 24 {
        return Err(Error::Invariant(format!("SL2(3) realization has order {}", group.order())));
    }
    let n = group.subgroup(vec![pi, pj]);
    let p = group.subgroup(vec![pc]);
    check_decomposition(&group, &n, &p)?;
    let mut meta = BTreeMap::new();
    meta.insert("N".to_string(), n);
    meta.insert("P".to_string(), p);
    Ok(BuiltGroup {
        group,
        meta,
        family: "SL2of3".to_string(),
        expected_case: Some("3".to_string()),
    })
}
