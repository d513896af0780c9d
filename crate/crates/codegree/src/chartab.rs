//! Exact character tables by the class-algebra method over a prime field,
//! and everything derived from them: integer degrees, root-of-unity
//! multiplicity vectors, character kernels, and codegrees.
//!
//! The table is never lifted to cyclotomic values. Kernels come from the
//! multiplicity vectors (the weight concentrating at exponent 0), which is
//! all the codegree computation needs.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fq::{self, inv_mod, pow_mod, FqMatrix, Subspace};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::structure;

/// Conjugacy classes in the fixed ordering: identity first, then increasing
/// element order, ties broken by first appearance in `elements()` order.
#[derive(Debug, Clone)]
pub struct ClassData {
    pub group: PermGroup,
    pub reps: Vec<Permutation>,
    pub sizes: Vec<u64>,
    pub exponent: u64,
    pub inverse_class: Vec<usize>,
    elements: Vec<Permutation>,
    members: Vec<Vec<usize>>,
    class_of: HashMap<Vec<usize>, usize>,
    power_map: Vec<Vec<usize>>,
}

impl ClassData {
    pub fn new(group: &PermGroup) -> Result<ClassData> {
        let elements = group.elements()?;
        let index: HashMap<Vec<usize>, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.images().to_vec(), i)).collect();
        let mut assigned = vec![usize::MAX; elements.len()];
        let mut raw_classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..elements.len() {
            if assigned[start] != usize::MAX {
                continue;
            }
            let cid = raw_classes.len();
            let mut orbit = vec![start];
            assigned[start] = cid;
            let mut i = 0;
            while i < orbit.len() {
                let x = &elements[orbit[i]];
                for g in group.generators() {
                    let y = x.conjugate_by(g);
                    let yi = index[y.images()];
                    if assigned[yi] == usize::MAX {
                        assigned[yi] = cid;
                        orbit.push(yi);
                    }
                }
                i += 1;
            }
            raw_classes.push(orbit);
        }
        // order classes: identity first, then rep order, then discovery order
        let mut order_keys: Vec<(u64, usize)> = raw_classes
            .iter()
            .enumerate()
            .map(|(i, c)| (elements[c[0]].order(), i))
            .collect();
        order_keys.sort();
        let exponent = group.exponent()?;
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut members = Vec::new();
        let mut class_of = HashMap::new();
        for (new_id, &(_, old_id)) in order_keys.iter().enumerate() {
            let c = &raw_classes[old_id];
            reps.push(elements[c[0]].clone());
            sizes.push(c.len() as u64);
            for &ei in c {
                class_of.insert(elements[ei].images().to_vec(), new_id);
            }
            members.push(c.clone());
        }
        let inverse_class: Vec<usize> =
            reps.iter().map(|r| class_of[r.inverse().images()]).collect();
        let power_map: Vec<Vec<usize>> = reps
            .iter()
            .map(|r| (0..exponent).map(|u| class_of[r.pow(u).images()]).collect())
            .collect();
        Ok(ClassData {
            group: group.clone(),
            reps,
            sizes,
            exponent,
            inverse_class,
            elements,
            members,
            class_of,
            power_map,
        })
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, x: &Permutation) -> Result<usize> {
        self.class_of
            .get(x.images())
            .copied()
            .ok_or_else(|| Error::Input("element lies outside the group".into()))
    }

    /// Class of reps[j]^u for 0 <= u < exponent.
    pub fn power_class(&self, j: usize, u: u64) -> usize {
        self.power_map[j][(u % self.exponent) as usize]
    }

    pub fn class_elements(&self, j: usize) -> impl Iterator<Item = &Permutation> {
        self.members[j].iter().map(move |&i| &self.elements[i])
    }
}

/// Class-algebra coefficient matrix for class r:
/// entry (j, s) counts pairs (x, y), x in K_r, y in K_j, with x y = reps[s].
pub fn structure_constants(cd: &ClassData, r: usize) -> Vec<Vec<u64>> {
    let k = cd.count();
    let mut m = vec![vec![0u64; k]; k];
    for x in cd.class_elements(r) {
        let xinv = x.inverse();
        for s in 0..k {
            let y = xinv.compose(&cd.reps[s]);
            let j = cd.class_of[y.images()];
            m[j][s] += 1;
        }
    }
    m
}

/// Smallest prime p with p = 1 (mod e) and p > 2 sqrt(|G|), plus the least
/// element of F_p with multiplicative order exactly e.
pub fn dixon_prime(order: u64, exponent: u64) -> (u64, u64) {
    let e = exponent;
    let mut p = e + 1;
    loop {
        if p % e == 1 && p * p > 4 * order && fq::is_prime(p) {
            break;
        }
        p += if e > 1 { e } else { 1 };
    }
    (p, least_root_of_order(e, p))
}

/// Least z in F_p of multiplicative order exactly e (e must divide p-1).
pub fn least_root_of_order(e: u64, p: u64) -> u64 {
    assert_eq!((p - 1) % e, 0, "no element of order {} in F_{}", e, p);
    let prime_factors: Vec<u64> = structure::factorize(e).into_iter().map(|(q, _)| q).collect();
    for z in 1..p {
        if pow_mod(z, e, p) == 1 && prime_factors.iter().all(|&q| pow_mod(z, e / q, p) != 1) {
            return z;
        }
    }
    unreachable!("F_p is cyclic, some element has order e");
}

/// Character table with values in F_p plus recovered integer data.
#[derive(Debug, Clone)]
pub struct CharTable {
    pub classes: ClassData,
    pub prime: u64,
    pub root_z: u64,
    /// values[i][j] = chi_i(reps[j]) mod p, rows sorted by (degree, row).
    pub values: Vec<Vec<u64>>,
    pub degrees: Vec<u64>,
    /// mults[i][j][k]: chi_i(g_j) = sum_k m_k zeta_o^k with o = |g_j|.
    pub mults: Vec<Vec<Vec<u64>>>,
}

/// Full table pipeline with the canonical Dixon prime.
pub fn char_table(cd: ClassData) -> Result<CharTable> {
    let (p, z) = dixon_prime(cd.group.order(), cd.exponent);
    char_table_with_prime(cd, p, z)
}

/// Table pipeline over a caller-chosen prime p = 1 (mod exponent),
/// p > 2 sqrt(|G|); used when two tables must share a field.
pub fn char_table_with_prime(cd: ClassData, p: u64, z: u64) -> Result<CharTable> {
    let mut t = modp_table(cd, p, z)?;
    fill_multiplicities(&mut t)?;
    Ok(t)
}

fn modp_table(cd: ClassData, p: u64, z: u64) -> Result<CharTable> {
    let k = cd.count();
    let n = cd.group.order();
    // simultaneous eigenvectors of the class matrices
    let mut spaces = vec![Subspace::full(p, k)];
    for r in 1..k {
        if spaces.iter().all(|s| s.rank() == 1) {
            break;
        }
        let m = to_matrix(&structure_constants(&cd, r), p);
        spaces = split_spaces(spaces, &m, p)?;
    }
    if spaces.iter().any(|s| s.rank() > 1) {
        // fallback: products of class matrices still lie in the class algebra
        'outer: for r in 1..k {
            for s in r..k {
                let a = to_matrix(&structure_constants(&cd, r), p);
                let b = to_matrix(&structure_constants(&cd, s), p);
                spaces = split_spaces(spaces, &a.mul(&b), p)?;
                if spaces.iter().all(|sp| sp.rank() == 1) {
                    break 'outer;
                }
            }
        }
    }
    if spaces.len() != k || spaces.iter().any(|s| s.rank() != 1) {
        return Err(Error::Invariant(format!(
            "class-matrix eigenspaces failed to split into {} lines",
            k
        )));
    }
    // normalize omega(identity class) = 1 and recover degrees
    let mut rows: Vec<(u64, Vec<u64>)> = Vec::new();
    let sqrt_n = isqrt(n);
    for s in &spaces {
        let w = s.basis()[0].clone();
        if w[0] == 0 {
            return Err(Error::Invariant("eigenvector vanishes on the identity class".into()));
        }
        let f = inv_mod(w[0], p);
        let w: Vec<u64> = w.iter().map(|&x| x * f % p).collect();
        let mut sum = 0u64;
        for j in 0..k {
            sum = (sum + w[j] * w[cd.inverse_class[j]] % p * inv_mod(cd.sizes[j] % p, p)) % p;
        }
        let dsq = n % p * inv_mod(sum, p) % p;
        let d = (1..=sqrt_n)
            .find(|&t| t % p * (t % p) % p == dsq)
            .ok_or_else(|| Error::Invariant("no integer degree matches the modular value".into()))?;
        // chi(g_j) = d * omega(j) / |K_j|
        let row: Vec<u64> = (0..k)
            .map(|j| d % p * w[j] % p * inv_mod(cd.sizes[j] % p, p) % p)
            .collect();
        rows.push((d, row));
    }
    rows.sort();
    let sum_sq: u64 = rows.iter().map(|(d, _)| d * d).sum();
    if sum_sq != n {
        return Err(Error::Invariant(format!(
            "degree squares sum to {}, group order is {}",
            sum_sq, n
        )));
    }
    let (degrees, values): (Vec<u64>, Vec<Vec<u64>>) = rows.into_iter().unzip();
    Ok(CharTable { classes: cd, prime: p, root_z: z, values, degrees, mults: Vec::new() })
}

fn to_matrix(rows: &[Vec<u64>], p: u64) -> FqMatrix {
    let k = rows.len();
    let entries: Vec<u64> = rows.iter().flat_map(|r| r.iter().map(|&x| x % p)).collect();
    FqMatrix::new(p, k, k, entries).expect("square integer matrix reduces mod p")
}

/// Refines each subspace into the eigenspaces of `m` restricted to it.
/// Subspaces here are intersections of eigenspaces of commuting matrices, so
/// they are m-invariant; a deterministic eigenvalue sweep over F_p splits
/// them.
fn split_spaces(spaces: Vec<Subspace>, m: &FqMatrix, p: u64) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for s in spaces {
        let dim = s.rank();
        if dim == 1 {
            out.push(s);
            continue;
        }
        // restricted action in the echelon basis of s
        let mut a = FqMatrix::zero(p, dim, dim);
        for (j, b) in s.basis().iter().enumerate() {
            let img = m.apply(b);
            let coords = s.coordinates(&img).ok_or_else(|| {
                Error::Invariant("class matrix left an eigenspace intersection".into())
            })?;
            for i in 0..dim {
                a.set(i, j, coords[i]);
            }
        }
        let mut found = 0;
        for lambda in 0..p {
            let mut shifted = a.clone();
            for i in 0..dim {
                shifted.set(i, i, (shifted.get(i, i) + p - lambda) % p);
            }
            if shifted.det() != 0 {
                continue;
            }
            let mut eig = Subspace::empty(p, s.basis()[0].len());
            for v in fq::nullspace(&shifted) {
                // lift restricted coordinates back to the ambient space
                let mut w = vec![0u64; s.basis()[0].len()];
                for (c, b) in v.iter().zip(s.basis()) {
                    for (wi, bi) in w.iter_mut().zip(b) {
                        *wi = (*wi + c * bi) % p;
                    }
                }
                eig.insert(w);
            }
            found += eig.rank();
            out.push(eig);
            if found == dim {
                break;
            }
        }
        if found != dim {
            return Err(Error::Invariant(
                "class matrix is not diagonalizable on an invariant subspace".into(),
            ));
        }
    }
    Ok(out)
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Recovers, for every entry, the integer multiplicities of each o-th root of
/// unity: chi(g) = sum_k m_k zeta_o^k, read off by a discrete Fourier sum
/// over the power map.
fn fill_multiplicities(t: &mut CharTable) -> Result<()> {
    let p = t.prime;
    let e = t.classes.exponent;
    let k = t.classes.count();
    let mut mults = Vec::with_capacity(t.values.len());
    for (i, row) in t.values.iter().enumerate() {
        let d = t.degrees[i];
        let mut per_class = Vec::with_capacity(k);
        for j in 0..k {
            let o = t.classes.reps[j].order();
            let zo = pow_mod(t.root_z, e / o, p);
            let zo_inv = inv_mod(zo, p);
            let o_inv = inv_mod(o % p, p);
            let mut ms = Vec::with_capacity(o as usize);
            for kk in 0..o {
                let mut acc = 0u64;
                for u in 0..o {
                    let theta = row[t.classes.power_class(j, u)];
                    acc = (acc + theta * pow_mod(zo_inv, u * kk % o, p)) % p;
                }
                let m = acc * o_inv % p;
                if m > d {
                    return Err(Error::Invariant(format!(
                        "root-of-unity multiplicity {} exceeds degree {}",
                        m, d
                    )));
                }
                ms.push(m);
            }
            let total: u64 = ms.iter().sum();
            if total != d {
                return Err(Error::Invariant(format!(
                    "multiplicities sum to {}, degree is {}",
                    total, d
                )));
            }
            per_class.push(ms);
        }
        mults.push(per_class);
    }
    t.mults = mults;
    Ok(())
}

impl CharTable {
    pub fn count(&self) -> usize {
        self.degrees.len()
    }

    /// Classes on which chi_i takes its degree: all weight at exponent 0.
    pub fn kernel_classes(&self, i: usize) -> Vec<usize> {
        let d = self.degrees[i];
        (0..self.classes.count())
            .filter(|&j| {
                let ms = &self.mults[i][j];
                ms[0] == d && ms[1..].iter().all(|&m| m == 0)
            })
            .collect()
    }

    /// Classes where |chi_i| equals the degree: weight concentrated on a
    /// single root of unity. This is the center Z(chi_i) as a class union.
    pub fn center_classes(&self, i: usize) -> Vec<usize> {
        let d = self.degrees[i];
        (0..self.classes.count())
            .filter(|&j| {
                let ms = &self.mults[i][j];
                ms.iter().filter(|&&m| m != 0).count() == 1 && ms.contains(&d)
            })
            .collect()
    }

    /// Kernel subgroup of chi_i, verified against the class-size sum.
    pub fn kernel_of_character(&self, i: usize) -> Result<(PermGroup, Vec<usize>)> {
        let classes = self.kernel_classes(i);
        let expected: u64 = classes.iter().map(|&j| self.classes.sizes[j]).sum();
        let seeds: Vec<Permutation> =
            classes.iter().map(|&j| self.classes.reps[j].clone()).collect();
        let sub = structure::normal_closure(&self.classes.group, &seeds)?;
        if sub.order() != expected {
            return Err(Error::Invariant(format!(
                "kernel subgroup has order {}, class sizes sum to {}",
                sub.order(),
                expected
            )));
        }
        Ok((sub, classes))
    }
}

/// Per-character codegree record plus the codegree set.
#[derive(Debug, Clone)]
pub struct CodegreeReport {
    pub table: CharTable,
    pub per_char: Vec<CharCodegree>,
    pub cod_set: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct CharCodegree {
    pub degree: u64,
    pub kernel_order: u64,
    pub kernel_classes: Vec<usize>,
    pub codegree: u64,
}

/// JSON-facing summary of one group's table and codegrees.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupReport {
    pub order: u64,
    pub exponent: u64,
    #[serde(rename = "classCount")]
    pub class_count: usize,
    pub degrees: Vec<u64>,
    pub codegrees: Vec<u64>,
    #[serde(rename = "codSet")]
    pub cod_set: Vec<u64>,
    pub kernels: Vec<KernelRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct KernelRecord {
    pub degree: u64,
    #[serde(rename = "kernelOrder")]
    pub kernel_order: u64,
    pub codegree: u64,
}

pub fn codegree_report(g: &PermGroup) -> Result<CodegreeReport> {
    let t = char_table(ClassData::new(g)?)?;
    report_from_table(t)
}

pub fn report_from_table(t: CharTable) -> Result<CodegreeReport> {
    let n = t.classes.group.order();
    let mut per_char = Vec::with_capacity(t.count());
    for i in 0..t.count() {
        let (kernel, kernel_classes) = t.kernel_of_character(i)?;
        let denom = kernel.order() * t.degrees[i];
        if n % denom != 0 {
            return Err(Error::Invariant(format!(
                "codegree {} / {} is not an integer",
                n, denom
            )));
        }
        per_char.push(CharCodegree {
            degree: t.degrees[i],
            kernel_order: kernel.order(),
            kernel_classes,
            codegree: n / denom,
        });
    }
    let mut cod_set: Vec<u64> = per_char.iter().map(|c| c.codegree).collect();
    cod_set.sort_unstable();
    cod_set.dedup();
    Ok(CodegreeReport { table: t, per_char, cod_set })
}

impl CodegreeReport {
    pub fn json_report(&self) -> GroupReport {
        GroupReport {
            order: self.table.classes.group.order(),
            exponent: self.table.classes.exponent,
            class_count: self.table.classes.count(),
            degrees: self.table.degrees.clone(),
            codegrees: self.per_char.iter().map(|c| c.codegree).collect(),
            cod_set: self.cod_set.clone(),
            kernels: self
                .per_char
                .iter()
                .map(|c| KernelRecord {
                    degree: c.degree,
                    kernel_order: c.kernel_order,
                    codegree: c.codegree,
                })
                .collect(),
        }
    }
}

/// Outcome of checking, for every chi of G and every irreducible constituent
/// psi of its restriction to N, that cod(psi) divides cod(chi).
#[derive(Debug, Clone)]
pub struct RestrictionRecord {
    /// multiplicity[i][l] = <chi_i restricted to N, psi_l>
    pub multiplicities: Vec<Vec<u64>>,
    pub g_codegrees: Vec<u64>,
    pub n_codegrees: Vec<u64>,
    pub all_divide: bool,
}

/// Verifies constituent-codegree divisibility across a normal subgroup, with
/// both tables recomputed over one shared prime so the modular inner products
/// are exact integers.
pub fn restriction_constituent_cods(g: &PermGroup, n: &PermGroup) -> Result<RestrictionRecord> {
    if !g.is_normal(n)? {
        return Err(Error::Input("restriction check needs a normal subgroup".into()));
    }
    let cd_g = ClassData::new(g)?;
    let cd_n = ClassData::new(n)?;
    let e = crate::perm::lcm(cd_g.exponent, cd_n.exponent);
    let mut p = e + 1;
    while !(p % e == 1 && p > 2 * g.order() && fq::is_prime(p)) {
        p += if e > 1 { e } else { 1 };
    }
    let z = least_root_of_order(e, p);
    // each table wants a root of order equal to its own exponent
    let zg = pow_mod(z, e / cd_g.exponent, p);
    let zn = pow_mod(z, e / cd_n.exponent, p);
    let rg = report_from_table(char_table_with_prime(cd_g, p, zg)?)?;
    let rn = report_from_table(char_table_with_prime(cd_n, p, zn)?)?;
    let tg = &rg.table;
    let tn = &rn.table;
    // class fusion N -> G
    let fusion: Vec<usize> = tn
        .classes
        .reps
        .iter()
        .map(|r| tg.classes.class_of(r))
        .collect::<Result<Vec<_>>>()?;
    let n_order = n.order();
    let n_inv = inv_mod(n_order % p, p);
    let mut multiplicities = vec![vec![0u64; tn.count()]; tg.count()];
    let mut all_divide = true;
    for i in 0..tg.count() {
        for l in 0..tn.count() {
            let mut acc = 0u64;
            for jn in 0..tn.classes.count() {
                let term = tn.classes.sizes[jn] % p
                    * tg.values[i][fusion[jn]]
                    % p
                    * tn.values[l][tn.classes.inverse_class[jn]]
                    % p;
                acc = (acc + term) % p;
            }
            let m = acc * n_inv % p;
            if m > tg.degrees[i] {
                return Err(Error::Invariant(
                    "restriction multiplicity exceeds the character degree".into(),
                ));
            }
            multiplicities[i][l] = m;
            if m > 0 && rg.per_char[i].codegree % rn.per_char[l].codegree != 0 {
                all_divide = false;
            }
        }
    }
    Ok(RestrictionRecord {
        multiplicities,
        g_codegrees: rg.per_char.iter().map(|c| c.codegree).collect(),
        n_codegrees: rn.per_char.iter().map(|c| c.codegree).collect(),
        all_divide,
    })
}
