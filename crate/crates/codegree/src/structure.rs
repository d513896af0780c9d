//! Structural subgroup computations: derived and lower-central data, centers
//! and centralizers, Fitting height, Frobenius detection, homocyclic and
//! (semi-/ultra-)extraspecial recognition, chief-factor modules, Sylow
//! subgroups, and coset-action quotients.
//!
//! Everything here is an exhaustive, deterministic scan backed by stabilizer
//! chains; the groups in scope are desk-scale, so correctness and
//! reproducibility win over asymptotics.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fq::{self, FqModule};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Trial-division factorization, smallest prime first.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_p_power(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// p-part of n: the largest power of p dividing n.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

/// Smallest normal subgroup of `g` containing `seed`.
pub fn normal_closure(g: &PermGroup, seed: &[Permutation]) -> Result<PermGroup> {
    let mut gens: Vec<Permutation> =
        seed.iter().filter(|p| !p.is_identity()).cloned().collect();
    let mut h = g.subgroup(gens.clone());
    loop {
        let mut added = false;
        let snapshot = gens.clone();
        for s in &snapshot {
            for t in g.generators() {
                let c = s.conjugate_by(t);
                if !h.contains(&c)? {
                    gens.push(c);
                    h = g.subgroup(gens.clone());
                    added = true;
                }
            }
        }
        if !added {
            return Ok(h);
        }
    }
}

/// G' = [G, G]: normal closure of the generator commutators.
pub fn derived_subgroup(g: &PermGroup) -> Result<PermGroup> {
    let mut comms = Vec::new();
    for (i, a) in g.generators().iter().enumerate() {
        for b in &g.generators()[i + 1..] {
            comms.push(a.commutator(b));
        }
    }
    normal_closure(g, &comms)
}

/// Derived series G > G' > G'' > .., ending at the perfect core.
pub fn derived_series(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        let next = derived_subgroup(last)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        let done = next.order() == 1;
        series.push(next);
        if done {
            return Ok(series);
        }
    }
}

pub fn is_solvable(g: &PermGroup) -> Result<bool> {
    Ok(derived_series(g)?.last().unwrap().order() == 1)
}

/// [A, B] for subgroups of `g` normalizing each other: normal closure (in the
/// join) of the pairwise generator commutators.
fn commutator_subgroup(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let mut comms = Vec::new();
    for x in a.generators() {
        for y in b.generators() {
            comms.push(x.commutator(y));
        }
    }
    normal_closure(g, &comms)
}

/// Stable term of the lower central series: iterate K -> [G, K] to a fixed
/// point, starting from K = G.
pub fn nilpotent_residual(g: &PermGroup) -> Result<PermGroup> {
    let mut k = g.clone();
    loop {
        let next = commutator_subgroup(g, g, &k)?;
        if next.order() == k.order() {
            return Ok(next);
        }
        k = next;
    }
}

pub fn is_nilpotent(g: &PermGroup) -> Result<bool> {
    Ok(nilpotent_residual(g)?.order() == 1)
}

/// Recursion depth of G -> nilpotent residual until trivial. Errors on
/// nonsolvable input (where the recursion would stall above the trivial
/// group).
pub fn fitting_height(g: &PermGroup) -> Result<u32> {
    if !is_solvable(g)? {
        return Err(Error::Domain("Fitting height requires a solvable group".into()));
    }
    let mut h = 0;
    let mut k = g.clone();
    while k.order() > 1 {
        k = nilpotent_residual(&k)?;
        h += 1;
    }
    Ok(h)
}

pub fn center(g: &PermGroup) -> Result<PermGroup> {
    let mut gens = Vec::new();
    for x in g.elements()? {
        if g.generators().iter().all(|t| x.compose(t) == t.compose(&x)) {
            gens.push(x);
        }
    }
    Ok(g.subgroup(gens))
}

pub fn centralizer_of_element(g: &PermGroup, x: &Permutation) -> Result<PermGroup> {
    let mut gens = Vec::new();
    for h in g.elements()? {
        if h.compose(x) == x.compose(&h) {
            gens.push(h);
        }
    }
    Ok(g.subgroup(gens))
}

/// Elements of `p` commuting with every generator of `n`.
pub fn centralizer_of_subgroup(p: &PermGroup, n: &PermGroup) -> Result<PermGroup> {
    let mut gens = Vec::new();
    for h in p.elements()? {
        if n.generators().iter().all(|x| h.compose(x) == x.compose(&h)) {
            gens.push(h);
        }
    }
    Ok(p.subgroup(gens))
}

/// Elements common to both subgroups (scans the smaller one).
pub fn intersection(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let mut gens = Vec::new();
    for x in small.elements()? {
        if big.contains(&x)? {
            gens.push(x);
        }
    }
    Ok(a.subgroup(gens))
}

/// Frobenius test for a factorization G = N . P: the P-action on N must be
/// fixed-point-free away from the identity.
pub fn is_frobenius(g: &PermGroup, n: &PermGroup, p: &PermGroup) -> Result<bool> {
    if !g.is_normal(n)? || !g.contains_group(p)? {
        return Err(Error::Input("Frobenius test needs a normal N and P inside G".into()));
    }
    if n.order() * p.order() != g.order() || intersection(n, p)?.order() != 1 {
        return Err(Error::Input("Frobenius test needs G = N x| P with trivial overlap".into()));
    }
    for h in p.elements()? {
        if h.is_identity() {
            continue;
        }
        for x in n.elements()? {
            if !x.is_identity() && x.conjugate_by(&h) == x {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// (p, rank) when G is elementary abelian of order p^rank, else none.
/// The trivial group returns none.
pub fn elementary_abelian_rank(g: &PermGroup) -> Result<Option<(u64, u32)>> {
    if !g.is_abelian() || g.order() == 1 {
        return Ok(None);
    }
    let f = factorize(g.order());
    if f.len() != 1 {
        return Ok(None);
    }
    let (p, rank) = f[0];
    if g.exponent()? != p {
        return Ok(None);
    }
    Ok(Some((p, rank)))
}

/// Abelian G isomorphic to (C_m)^t for a single m: each Sylow part must be
/// homocyclic with the same number of cyclic factors.
pub fn is_homocyclic(g: &PermGroup) -> Result<bool> {
    if !g.is_abelian() {
        return Ok(false);
    }
    if g.order() == 1 {
        return Ok(true);
    }
    let elems = g.elements()?;
    let mut rank: Option<u64> = None;
    for (p, a) in factorize(g.order()) {
        let exp_p = p_part(g.exponent()?, p);
        let e = factorize(exp_p)[0].1;
        if a % e != 0 {
            return Ok(false);
        }
        let t = (a / e) as u64;
        // (C_{p^e})^t has exactly p^{kt} solutions of x^{p^k} = 1 for k <= e
        let mut pk = 1u64;
        for k in 1..=e {
            pk *= p;
            let count = elems.iter().filter(|x| x.pow(pk).is_identity()).count() as u64;
            if count != pow_u64(p, k as u64 * t) {
                return Ok(false);
            }
        }
        match rank {
            Some(r) if r != t => return Ok(false),
            _ => rank = Some(t),
        }
    }
    Ok(true)
}

fn pow_u64(b: u64, e: u64) -> u64 {
    (0..e).fold(1u64, |acc, _| acc * b)
}

/// Frattini subgroup of a p-group: closure of commutators and p-th powers.
pub fn frattini_of_p_group(g: &PermGroup) -> Result<PermGroup> {
    let f = factorize(g.order());
    if f.len() != 1 {
        return Err(Error::Domain("Frattini shortcut only applies to p-groups".into()));
    }
    let p = f[0].0;
    let mut seed = Vec::new();
    for (i, a) in g.generators().iter().enumerate() {
        for b in &g.generators()[i + 1..] {
            seed.push(a.commutator(b));
        }
    }
    for a in g.generators() {
        seed.push(a.pow(p));
    }
    normal_closure(g, &seed)
}

/// Extraspecial p-group: nonabelian with G' = Z(G) = Phi(G) of order p.
pub fn is_extraspecial(g: &PermGroup) -> Result<bool> {
    let f = factorize(g.order());
    if f.len() != 1 || g.is_abelian() {
        return Ok(false);
    }
    let p = f[0].0;
    let d = derived_subgroup(g)?;
    if d.order() != p {
        return Ok(false);
    }
    let z = center(g)?;
    let phi = frattini_of_p_group(g)?;
    Ok(z.order() == p && phi.order() == p && z.contains_group(&d)? && phi.contains_group(&d)?)
}

/// Semi-extraspecial p-group: G' = Z(G) = Phi(G), and the quotient by every
/// index-p subgroup of G' is extraspecial.
pub fn is_semi_extraspecial(g: &PermGroup) -> Result<bool> {
    let f = factorize(g.order());
    if f.len() != 1 {
        return Err(Error::Domain("semi-extraspecial test requires a p-group".into()));
    }
    if g.is_abelian() {
        return Err(Error::Domain("semi-extraspecial test requires a nonabelian group".into()));
    }
    let p = f[0].0;
    let d = derived_subgroup(g)?;
    let z = center(g)?;
    let phi = frattini_of_p_group(g)?;
    if d.order() != z.order()
        || d.order() != phi.order()
        || !z.contains_group(&d)?
        || !phi.contains_group(&d)?
    {
        return Ok(false);
    }
    for m in maximal_subgroups_of_abelian_p_group(&d, p)? {
        let q = Quotient::new(g, &m)?;
        if !is_extraspecial(&q.group)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Semi-extraspecial with |G'|^2 = |G : G'|.
pub fn is_ultraspecial(g: &PermGroup) -> Result<bool> {
    if !is_semi_extraspecial(g)? {
        return Ok(false);
    }
    let d = derived_subgroup(g)?;
    Ok(d.order() * d.order() == g.order() / d.order())
}

/// Index-p subgroups of an abelian p-group: kernels of the nonzero
/// functionals on A / Phi(A), one per hyperplane.
pub fn maximal_subgroups_of_abelian_p_group(a: &PermGroup, p: u64) -> Result<Vec<PermGroup>> {
    if a.order() == 1 {
        return Ok(Vec::new());
    }
    let phi_gens: Vec<Permutation> = a.generators().iter().map(|g| g.pow(p)).collect();
    let phi = a.subgroup(phi_gens);
    let basis = coset_basis(a, &phi)?;
    let dict = coset_vectors(a, &phi, &basis, p)?;
    let r = basis.len();
    let mut out = Vec::new();
    // nonzero functionals up to scalar: first nonzero coefficient = 1
    let mut f = vec![0u64; r];
    loop {
        // advance f in base-p counting
        let mut i = 0;
        loop {
            if i == r {
                return Ok(out);
            }
            f[i] += 1;
            if f[i] < p {
                break;
            }
            f[i] = 0;
            i += 1;
        }
        if f.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let mut gens = Vec::new();
        for x in a.elements()? {
            let v = &dict[x.images()];
            let dot: u64 = f.iter().zip(v).map(|(c, y)| c * y % p).sum::<u64>() % p;
            if dot == 0 {
                gens.push(x);
            }
        }
        out.push(a.subgroup(gens));
    }
}

/// Coset representatives of B in A that are independent modulo B, picked in
/// deterministic element order; they generate A together with B.
fn coset_basis(a: &PermGroup, b: &PermGroup) -> Result<Vec<Permutation>> {
    let mut basis: Vec<Permutation> = Vec::new();
    let mut span_gens: Vec<Permutation> = b.generators().to_vec();
    let mut span = a.subgroup(span_gens.clone());
    for x in a.elements()? {
        if span.order() == a.order() {
            break;
        }
        if !span.contains(&x)? {
            basis.push(x.clone());
            span_gens.push(x);
            span = a.subgroup(span_gens.clone());
        }
    }
    Ok(basis)
}

/// Maps every element of A to its F_q-coordinate vector in the elementary
/// abelian layer A/B, keyed by image table. The basis must be a coset basis
/// of B in A with A/B elementary abelian of exponent q.
fn coset_vectors(
    a: &PermGroup,
    b: &PermGroup,
    basis: &[Permutation],
    q: u64,
) -> Result<HashMap<Vec<usize>, Vec<u64>>> {
    let m = basis.len();
    let b_elems = b.elements()?;
    let mut dict: HashMap<Vec<usize>, Vec<u64>> = HashMap::new();
    let total = pow_u64(q, m as u64);
    for idx in 0..total {
        let mut e = vec![0u64; m];
        let mut x = idx;
        for item in e.iter_mut() {
            *item = x % q;
            x /= q;
        }
        let mut prod = a.identity();
        for (i, bi) in basis.iter().enumerate() {
            prod = prod.compose(&bi.pow(e[i]));
        }
        for belem in &b_elems {
            let elem = prod.compose(belem);
            if let Some(prev) = dict.insert(elem.images().to_vec(), e.clone()) {
                if prev != e {
                    return Err(Error::Invariant(
                        "layer coset enumeration hit the same element twice".into(),
                    ));
                }
            }
        }
    }
    if dict.len() as u64 != a.order() {
        return Err(Error::Invariant(format!(
            "layer coset enumeration covered {} of {} elements",
            dict.len(),
            a.order()
        )));
    }
    Ok(dict)
}

/// One elementary abelian chief factor of order q^dim, carried as the module
/// for the conjugation action of the acting generators.
#[derive(Debug, Clone)]
pub struct ChiefFactorModule {
    pub q: u64,
    pub dim: usize,
    pub module: FqModule,
}

/// G-chief factors inside a normal nilpotent N with coprime complement P:
/// lower exponent-q central series of each Sylow part of N, each layer split
/// into irreducible P-module composition factors (acting matrices follow
/// P's generator sequence).
pub fn chief_factors_in_kernel(
    g: &PermGroup,
    n: &PermGroup,
    p: &PermGroup,
) -> Result<Vec<ChiefFactorModule>> {
    if !g.is_normal(n)? {
        return Err(Error::Input("chief factor extraction needs N normal in G".into()));
    }
    if crate::perm::gcd(n.order(), p.order()) != 1 {
        return Err(Error::Domain("chief factor extraction needs a coprime action".into()));
    }
    if !is_nilpotent(n)? {
        return Err(Error::Domain("chief factor extraction needs a nilpotent kernel".into()));
    }
    let mut out = Vec::new();
    for (q, _) in factorize(n.order()) {
        // Sylow q-part of nilpotent N = all elements of q-power order
        let mut sgens = Vec::new();
        for x in n.elements()? {
            if !x.is_identity() && is_p_power(x.order(), q) {
                sgens.push(x);
            }
        }
        let nq = n.subgroup(sgens);
        // lower exponent-q central series
        let mut series = vec![nq.clone()];
        loop {
            let cur = series.last().unwrap();
            if cur.order() == 1 {
                break;
            }
            let mut seed = Vec::new();
            for x in cur.elements()? {
                for y in nq.generators() {
                    seed.push(x.commutator(y));
                }
                seed.push(x.pow(q));
            }
            let next = normal_closure(&nq, &seed)?;
            series.push(next);
        }
        for w in series.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let module = layer_module(a, b, q, p)?;
            for factor in fq::composition_factors(&module)? {
                out.push(ChiefFactorModule { q, dim: factor.dim, module: factor });
            }
        }
    }
    Ok(out)
}

/// The elementary abelian layer A/B as an F_q module under conjugation by
/// the generators of P.
fn layer_module(a: &PermGroup, b: &PermGroup, q: u64, p: &PermGroup) -> Result<FqModule> {
    let basis = coset_basis(a, b)?;
    let dict = coset_vectors(a, b, &basis, q)?;
    let m = basis.len();
    let acting = p
        .generators()
        .iter()
        .map(|t| {
            let mut mat = crate::fq::FqMatrix::zero(q, m, m);
            for (j, bj) in basis.iter().enumerate() {
                let img = bj.conjugate_by(t);
                let v = dict.get(img.images()).ok_or_else(|| {
                    Error::Invariant("conjugation left the chief series layer".into())
                })?;
                for i in 0..m {
                    mat.set(i, j, v[i]);
                }
            }
            Ok(mat)
        })
        .collect::<Result<Vec<_>>>()?;
    FqModule::new(q, m, acting)
}

/// Sylow p-subgroup by greedy extension: repeatedly adjoin a p-element whose
/// join with the current p-subgroup is still a p-group. Always succeeds on a
/// finite group, in deterministic element order.
pub fn sylow_subgroup(g: &PermGroup, p: u64) -> Result<PermGroup> {
    let target = p_part(g.order(), p);
    if target == 1 {
        return Ok(g.subgroup(Vec::new()));
    }
    let elems = g.elements()?;
    let mut gens: Vec<Permutation> = Vec::new();
    let mut s = g.subgroup(Vec::new());
    while s.order() < target {
        let mut progressed = false;
        for x in &elems {
            if x.is_identity() || !is_p_power(x.order(), p) || s.contains(x)? {
                continue;
            }
            let mut cand = gens.clone();
            cand.push(x.clone());
            let t = g.subgroup(cand.clone());
            if is_p_power(t.order(), p) {
                gens = cand;
                s = t;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Err(Error::Invariant(format!(
                "Sylow {}-extension stalled at order {}",
                p,
                s.order()
            )));
        }
    }
    Ok(s)
}

/// G acting on the right cosets of a normal subgroup M, with the coset
/// representatives retained so elements map to quotient points.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: PermGroup,
    reps: Vec<Permutation>,
    sub: PermGroup,
}

impl Quotient {
    pub fn new(g: &PermGroup, m: &PermGroup) -> Result<Quotient> {
        if !g.is_normal(m)? {
            return Err(Error::Input("quotients require a normal subgroup".into()));
        }
        let elems = g.elements()?;
        let mut reps: Vec<Permutation> = Vec::new();
        for x in &elems {
            if coset_index(&reps, m, x)?.is_none() {
                reps.push(x.clone());
            }
        }
        let k = reps.len();
        let gens = g
            .generators()
            .iter()
            .map(|t| {
                let images = reps
                    .iter()
                    .map(|r| {
                        let moved = r.compose(t);
                        coset_index(&reps, m, &moved)?.ok_or_else(|| {
                            Error::Invariant("coset action fell outside the transversal".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Permutation::from_images(images)
            })
            .collect::<Result<Vec<_>>>()?;
        let group = PermGroup::with_capacity(k, gens, g.capacity())?;
        Ok(Quotient { group, reps, sub: m.clone() })
    }

    /// Quotient point holding the coset of `x`.
    pub fn coset_of(&self, x: &Permutation) -> Result<usize> {
        coset_index(&self.reps, &self.sub, x)?
            .ok_or_else(|| Error::Input("element lies outside the quotient's parent".into()))
    }

    pub fn representative(&self, point: usize) -> &Permutation {
        &self.reps[point]
    }

    /// Permutation induced on the cosets by an element of the parent group.
    pub fn induced(&self, x: &Permutation) -> Result<Permutation> {
        let images = self
            .reps
            .iter()
            .map(|r| self.coset_of(&r.compose(x)))
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}

fn coset_index(reps: &[Permutation], m: &PermGroup, x: &Permutation) -> Result<Option<usize>> {
    for (i, r) in reps.iter().enumerate() {
        if m.contains(&x.compose(&r.inverse()))? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> PermGroup {
        PermGroup::from_cycle_strings(4, &["(0 1)", "(0 1 2 3)"]).unwrap()
    }

    fn q8() -> PermGroup {
        PermGroup::from_cycle_strings(8, &["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"]).unwrap()
    }

    fn d8() -> PermGroup {
        PermGroup::from_cycle_strings(4, &["(0 1 2 3)", "(1 3)"]).unwrap()
    }

    fn c7_c3() -> PermGroup {
        // C7 x| C3, the C3 acting as multiplication by 2 mod 7
        PermGroup::from_cycle_strings(7, &["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"]).unwrap()
    }

    #[test]
    fn derived_series_of_s4() {
        let series = derived_series(&s4()).unwrap();
        let orders: Vec<u64> = series.iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
    }

    #[test]
    fn a5_is_perfect() {
        let a5 = PermGroup::from_cycle_strings(5, &["(0 1 2 3 4)", "(0 1 2)"]).unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(derived_subgroup(&a5).unwrap().order(), 60);
        assert!(!is_solvable(&a5).unwrap());
        assert!(matches!(fitting_height(&a5), Err(Error::Domain(_))));
    }

    #[test]
    fn abelian_group_has_trivial_derived_subgroup() {
        let g = PermGroup::from_cycle_strings(5, &["(0 1 2 3 4)"]).unwrap();
        assert_eq!(derived_subgroup(&g).unwrap().order(), 1);
    }

    #[test]
    fn nilpotent_residuals() {
        assert_eq!(nilpotent_residual(&s4()).unwrap().order(), 12);
        assert_eq!(nilpotent_residual(&c7_c3()).unwrap().order(), 7);
        assert_eq!(nilpotent_residual(&q8()).unwrap().order(), 1);
    }

    #[test]
    fn fitting_heights() {
        assert_eq!(fitting_height(&s4()).unwrap(), 3);
        assert_eq!(fitting_height(&c7_c3()).unwrap(), 2);
        assert_eq!(fitting_height(&q8()).unwrap(), 1);
        assert_eq!(fitting_height(&PermGroup::trivial(3)).unwrap(), 0);
    }

    #[test]
    fn centers() {
        assert_eq!(q8().order(), 8);
        assert_eq!(center(&q8()).unwrap().order(), 2);
        assert_eq!(center(&s4()).unwrap().order(), 1);
    }

    #[test]
    fn centralizer_of_transposition_in_s4() {
        let g = s4();
        let t = Permutation::from_cycles(4, "(0 1)").unwrap();
        assert_eq!(centralizer_of_element(&g, &t).unwrap().order(), 4);
    }

    #[test]
    fn frobenius_detection() {
        let g = c7_c3();
        let n = g.subgroup(vec![Permutation::from_cycles(7, "(0 1 2 3 4 5 6)").unwrap()]);
        let p = g.subgroup(vec![Permutation::from_cycles(7, "(1 2 4)(3 6 5)").unwrap()]);
        assert!(is_frobenius(&g, &n, &p).unwrap());
        // S3 x C3 fails: the direct C3 factor centralizes everything
        let h = PermGroup::from_cycle_strings(6, &["(0 1 2)", "(0 1)", "(3 4 5)"]).unwrap();
        let hn = h.subgroup(vec![
            Permutation::from_cycles(6, "(0 1 2)").unwrap(),
            Permutation::from_cycles(6, "(3 4 5)").unwrap(),
        ]);
        let hp = h.subgroup(vec![Permutation::from_cycles(6, "(0 1)").unwrap()]);
        assert!(!is_frobenius(&h, &hn, &hp).unwrap());
    }

    #[test]
    fn elementary_abelian_recognition() {
        let v4 = PermGroup::from_cycle_strings(4, &["(0 1)", "(2 3)"]).unwrap();
        assert_eq!(elementary_abelian_rank(&v4).unwrap(), Some((2, 2)));
        let c4 = PermGroup::from_cycle_strings(4, &["(0 1 2 3)"]).unwrap();
        assert_eq!(elementary_abelian_rank(&c4).unwrap(), None);
        assert_eq!(elementary_abelian_rank(&s4()).unwrap(), None);
    }

    #[test]
    fn homocyclic_recognition() {
        let c4c4 = PermGroup::from_cycle_strings(8, &["(0 1 2 3)", "(4 5 6 7)"]).unwrap();
        assert!(is_homocyclic(&c4c4).unwrap());
        let c4c2 = PermGroup::from_cycle_strings(6, &["(0 1 2 3)", "(4 5)"]).unwrap();
        assert!(!is_homocyclic(&c4c2).unwrap());
        let c12 = PermGroup::from_cycle_strings(7, &["(0 1 2 3)", "(4 5 6)"]).unwrap();
        assert!(is_homocyclic(&c12).unwrap());
    }

    #[test]
    fn exponent_of_c9_with_inversion_is_18() {
        let g = PermGroup::from_cycle_strings(
            9,
            &["(0 1 2 3 4 5 6 7 8)", "(1 8)(2 7)(3 6)(4 5)"],
        )
        .unwrap();
        assert_eq!(g.order(), 18);
        assert_eq!(g.exponent().unwrap(), 18);
    }

    #[test]
    fn frattini_subgroups() {
        assert_eq!(frattini_of_p_group(&q8()).unwrap().order(), 2);
        let c9 = PermGroup::from_cycle_strings(9, &["(0 1 2 3 4 5 6 7 8)"]).unwrap();
        assert_eq!(frattini_of_p_group(&c9).unwrap().order(), 3);
        let v4 = PermGroup::from_cycle_strings(4, &["(0 1)", "(2 3)"]).unwrap();
        assert_eq!(frattini_of_p_group(&v4).unwrap().order(), 1);
        assert!(frattini_of_p_group(&c7_c3()).is_err());
    }

    #[test]
    fn extraspecial_family_tests() {
        assert!(is_semi_extraspecial(&q8()).unwrap());
        assert!(is_ultraspecial(&q8()).unwrap());
        assert!(is_semi_extraspecial(&d8()).unwrap());
        assert!(is_ultraspecial(&d8()).unwrap());
        // D8 x D8: center and derived subgroup both have order 4, but the
        // quotient by a diagonal maximal subgroup of the derived part is not
        // extraspecial
        let dd = PermGroup::from_cycle_strings(
            8,
            &["(0 1 2 3)", "(1 3)", "(4 5 6 7)", "(5 7)"],
        )
        .unwrap();
        assert_eq!(dd.order(), 64);
        assert!(!is_semi_extraspecial(&dd).unwrap());
    }

    #[test]
    fn quotient_s4_by_v4_is_s3() {
        let g = s4();
        let v4 = g.subgroup(vec![
            Permutation::from_cycles(4, "(0 1)(2 3)").unwrap(),
            Permutation::from_cycles(4, "(0 2)(1 3)").unwrap(),
        ]);
        let q = Quotient::new(&g, &v4).unwrap();
        assert_eq!(q.group.order(), 6);
        assert!(!q.group.is_abelian());
        assert_eq!(q.coset_of(&g.identity()).unwrap(), 0);
    }

    #[test]
    fn sylow_subgroups_of_s4() {
        let g = s4();
        assert_eq!(sylow_subgroup(&g, 2).unwrap().order(), 8);
        assert_eq!(sylow_subgroup(&g, 3).unwrap().order(), 3);
        assert_eq!(sylow_subgroup(&g, 5).unwrap().order(), 1);
        assert_eq!(sylow_subgroup(&c7_c3(), 7).unwrap().order(), 7);
    }

    #[test]
    fn chief_factors_of_inverted_c9() {
        let g = PermGroup::from_cycle_strings(
            9,
            &["(0 1 2 3 4 5 6 7 8)", "(1 8)(2 7)(3 6)(4 5)"],
        )
        .unwrap();
        let n = g.subgroup(vec![Permutation::from_cycles(9, "(0 1 2 3 4 5 6 7 8)").unwrap()]);
        let p = g.subgroup(vec![Permutation::from_cycles(9, "(1 8)(2 7)(3 6)(4 5)").unwrap()]);
        let factors = chief_factors_in_kernel(&g, &n, &p).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|f| f.q == 3 && f.dim == 1));
        assert!(fq::are_isomorphic(&factors[0].module, &factors[1].module).unwrap());
    }

    #[test]
    fn chief_factors_of_diagonal_c3_on_c7_squared() {
        // points = F_7^2 numbered 7a+b; translations plus diag(2,4)
        let idx = |a: usize, b: usize| 7 * (a % 7) + (b % 7);
        let t1 = Permutation::from_images(
            (0..49).map(|i| idx(i / 7 + 1, i % 7)).collect(),
        )
        .unwrap();
        let t2 = Permutation::from_images(
            (0..49).map(|i| idx(i / 7, i % 7 + 1)).collect(),
        )
        .unwrap();
        let m = Permutation::from_images(
            (0..49).map(|i| idx(2 * (i / 7), 4 * (i % 7))).collect(),
        )
        .unwrap();
        let g = PermGroup::new(49, vec![t1.clone(), t2.clone(), m.clone()]).unwrap();
        assert_eq!(g.order(), 147);
        let n = g.subgroup(vec![t1, t2]);
        let p = g.subgroup(vec![m]);
        let factors = chief_factors_in_kernel(&g, &n, &p).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|f| f.dim == 1));
        assert!(!fq::are_isomorphic(&factors[0].module, &factors[1].module).unwrap());
    }

    #[test]
    fn chief_factor_of_singer_plane_is_irreducible() {
        // C3^2 x| C4: the square of a Singer generator of GL2(3)
        let s = fq::singer_matrix(3, 2).unwrap().pow(2);
        let idx = |v: &[u64]| (v[0] * 3 + v[1]) as usize;
        let t1 = Permutation::from_images(
            (0..9).map(|i| idx(&[(i as u64 / 3 + 1) % 3, i as u64 % 3])).collect(),
        )
        .unwrap();
        let t2 = Permutation::from_images(
            (0..9).map(|i| idx(&[i as u64 / 3, (i as u64 % 3 + 1) % 3])).collect(),
        )
        .unwrap();
        let act = Permutation::from_images(
            (0..9).map(|i| idx(&s.apply(&[i as u64 / 3, i as u64 % 3]))).collect(),
        )
        .unwrap();
        let g = PermGroup::new(9, vec![t1.clone(), t2.clone(), act.clone()]).unwrap();
        assert_eq!(g.order(), 36);
        let n = g.subgroup(vec![t1, t2]);
        let p = g.subgroup(vec![act]);
        let factors = chief_factors_in_kernel(&g, &n, &p).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].dim, 2);
    }

    #[test]
    fn intersections_and_closures() {
        let g = s4();
        let a4 = PermGroup::from_cycle_strings(4, &["(0 1 2)", "(1 2 3)"]).unwrap();
        let d = d8();
        let both = intersection(&a4, &d).unwrap();
        assert_eq!(both.order(), 4); // V4
        let t = Permutation::from_cycles(4, "(0 1)").unwrap();
        let nc = normal_closure(&g, &[t]).unwrap();
        assert_eq!(nc.order(), 24);
    }
}
