//! Permutation groups indexed by a deterministic stabilizer chain.
//!
//! Base points are chosen smallest-moved-point-first and transversals are
//! extended in sorted point order, so the chain (and every enumeration that
//! derives from it) is reproducible given the generator sequence.

use std::collections::HashMap;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on exhaustive element listings.
pub const DEFAULT_CAPACITY: usize = 100_000;

static GLOBAL_CAPACITY: std::sync::atomic::AtomicUsize =
    std::sync::atomic::AtomicUsize::new(DEFAULT_CAPACITY);
static GLOBAL_SEED: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);

/// Raise (or lower) the capacity used by groups constructed afterwards.
pub fn set_default_capacity(c: usize) {
    GLOBAL_CAPACITY.store(c, std::sync::atomic::Ordering::Relaxed);
}

pub fn default_capacity() -> usize {
    GLOBAL_CAPACITY.load(std::sync::atomic::Ordering::Relaxed)
}

/// Extra seed mixed into every randomized fallback (0 = fixed built-in seeds).
pub fn set_rng_seed(s: u64) {
    GLOBAL_SEED.store(s, std::sync::atomic::Ordering::Relaxed);
}

pub fn rng_seed() -> u64 {
    GLOBAL_SEED.load(std::sync::atomic::Ordering::Relaxed)
}

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    capacity: usize,
    chain: OnceLock<StabChain>,
}

#[derive(Debug, Clone)]
pub struct StabChain {
    levels: Vec<Level>,
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// orbit point -> transversal rep mapping base to that point,
    /// kept sorted by point.
    transversal: Vec<(usize, Permutation)>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Level {
        Level { base, gens: Vec::new(), transversal: vec![(base, Permutation::identity(degree))] }
    }

    fn rep(&self, point: usize) -> Option<&Permutation> {
        self.transversal
            .binary_search_by_key(&point, |(p, _)| *p)
            .ok()
            .map(|i| &self.transversal[i].1)
    }

    /// Recomputes the orbit of `base` and its transversal from scratch, using
    /// the full strong generating set of this level's stabilizer (`gens`).
    /// BFS over points in ascending order keeps the result deterministic.
    fn rebuild_transversal(&mut self, degree: usize, gens: &[Permutation]) {
        let mut reps: HashMap<usize, Permutation> = HashMap::new();
        reps.insert(self.base, Permutation::identity(degree));
        let mut frontier = vec![self.base];
        while !frontier.is_empty() {
            frontier.sort_unstable();
            let mut next = Vec::new();
            for &pt in &frontier {
                let t = reps[&pt].clone();
                for g in gens {
                    let img = g.apply(pt);
                    if !reps.contains_key(&img) {
                        reps.insert(img, t.compose(g));
                        next.push(img);
                    }
                }
            }
            frontier = next;
        }
        let mut tv: Vec<(usize, Permutation)> = reps.into_iter().collect();
        tv.sort_by_key(|(p, _)| *p);
        self.transversal = tv;
    }
}

impl StabChain {
    /// Deterministic Schreier-Sims over the given generators.
    fn build(degree: usize, generators: &[Permutation]) -> StabChain {
        let mut chain = StabChain { levels: Vec::new() };
        for g in generators {
            if !g.is_identity() {
                chain.add_generator(degree, 0, g.clone());
            }
        }
        chain.close(degree);
        chain
    }

    /// A generator stalling at `level` fixes every earlier base point, so it
    /// joins the stabilizer generating set S^(i) for all i <= level; the
    /// orbits of all those levels must be recomputed.
    fn add_generator(&mut self, degree: usize, level: usize, g: Permutation) {
        if level == self.levels.len() {
            let base = g.min_moved().expect("identity filtered before insertion");
            self.levels.push(Level::new(base, degree));
        }
        self.levels[level].gens.push(g);
        for i in (0..=level).rev() {
            let gens = self.level_gens(i);
            self.levels[i].rebuild_transversal(degree, &gens);
        }
    }

    /// Strong generators of the stabilizer at `level`: everything inserted at
    /// this level or deeper (those fix all earlier base points).
    fn level_gens(&self, level: usize) -> Vec<Permutation> {
        self.levels[level..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    /// Sift `g` through levels starting at `start`; returns the residue and
    /// the level at which sifting stalled.
    fn strip(&self, start: usize, g: Permutation) -> (Permutation, usize) {
        let mut h = g;
        let mut lvl = start;
        while lvl < self.levels.len() {
            if h.is_identity() {
                break;
            }
            let img = h.apply(self.levels[lvl].base);
            match self.levels[lvl].rep(img) {
                Some(t) => h = h.compose(&t.inverse()),
                None => return (h, lvl),
            }
            lvl += 1;
        }
        (h, lvl)
    }

    /// Schreier generator closure: on exit, every Schreier generator at every
    /// level sifts to the identity, so orders and membership are exact.
    fn close(&mut self, degree: usize) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        'outer: loop {
            let pts: Vec<usize> = self.levels[i].transversal.iter().map(|(p, _)| *p).collect();
            let gens = self.level_gens(i);
            for &pt in &pts {
                for s in &gens {
                    let t = self.levels[i].rep(pt).unwrap().clone();
                    let ts = t.compose(s);
                    let dest = ts.apply(self.levels[i].base);
                    let r = self.levels[i].rep(dest).unwrap();
                    let schreier = ts.compose(&r.inverse());
                    let (res, lvl) = self.strip(i + 1, schreier);
                    if !res.is_identity() {
                        self.add_generator(degree, lvl.min(self.levels.len()), res);
                        i = lvl.min(self.levels.len() - 1);
                        continue 'outer;
                    }
                }
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.transversal.len() as u64).product()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        let (res, _) = self.strip(0, p.clone());
        res.is_identity()
    }

    pub fn base_points(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    fn elements_into(&self, degree: usize, level: usize, out: &mut Vec<Permutation>) {
        if level == self.levels.len() {
            out.push(Permutation::identity(degree));
            return;
        }
        let mut inner = Vec::new();
        self.elements_into(degree, level + 1, &mut inner);
        for (_, t) in &self.levels[level].transversal {
            for h in &inner {
                out.push(h.compose(t));
            }
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
        Self::with_capacity(degree, generators, default_capacity())
    }

    pub fn with_capacity(
        degree: usize,
        generators: Vec<Permutation>,
        capacity: usize,
    ) -> Result<PermGroup> {
        if generators.is_empty() {
            return Err(Error::Input("generator sequence must be nonempty".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Input(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        Ok(PermGroup { degree, generators, capacity, chain: OnceLock::new() })
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, vec![Permutation::identity(degree)]).unwrap()
    }

    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<PermGroup> {
        let perms = gens
            .iter()
            .map(|s| Permutation::from_cycles(degree, s))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, perms)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn set_capacity(&mut self, capacity: usize) {
        self.capacity = capacity;
    }

    /// Same generators, same degree, new capacity bound.
    pub fn with_capacity_of(&self, capacity: usize) -> PermGroup {
        let mut g = self.clone();
        g.capacity = capacity;
        g
    }

    /// Builds a subgroup of the same degree inheriting this group's capacity.
    pub fn subgroup(&self, generators: Vec<Permutation>) -> PermGroup {
        let gens = if generators.is_empty() {
            vec![Permutation::identity(self.degree)]
        } else {
            generators
        };
        PermGroup::with_capacity(self.degree, gens, self.capacity)
            .expect("subgroup generators validated by caller")
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::build(self.degree, &self.generators))
    }

    pub fn order(&self) -> u64 {
        self.chain().order()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::Input(format!(
                "degree mismatch: permutation has degree {}, group has degree {}",
                p.degree(),
                self.degree
            )));
        }
        Ok(self.chain().contains(p))
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Exhaustive element listing in deterministic chain order.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        let n = self.order();
        if n > self.capacity as u64 {
            return Err(Error::Capacity(format!(
                "group order {} exceeds element enumeration bound {}",
                n, self.capacity
            )));
        }
        let mut out = Vec::with_capacity(n as usize);
        self.chain().elements_into(self.degree, 0, &mut out);
        debug_assert_eq!(out.len() as u64, n);
        Ok(out)
    }

    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        if point >= self.degree {
            return Err(Error::Input(format!(
                "point {} out of range for degree {}",
                point, self.degree
            )));
        }
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let pt = orbit[i];
            for g in &self.generators {
                let img = g.apply(pt);
                if !seen[img] {
                    seen[img] = true;
                    orbit.push(img);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// Deterministic pseudo-random element: a product of seeded transversal
    /// picks, one per chain level.
    pub fn random_element(&self, seed: u64) -> Permutation {
        let chain = self.chain();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ rng_seed());
        let mut g = Permutation::identity(self.degree);
        for level in &chain.levels {
            let idx = rng.gen_range(0..level.transversal.len());
            g = g.compose(&level.transversal[idx].1);
        }
        g
    }

    /// Exponent of the group: lcm of all element orders.
    pub fn exponent(&self) -> Result<u64> {
        let mut e = 1u64;
        for g in self.elements()? {
            e = crate::perm::lcm(e, g.order());
        }
        Ok(e)
    }

    /// True when every pair of generators commutes.
    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if a.compose(b) != b.compose(a) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `other` (same degree) is a subgroup of `self`.
    pub fn contains_group(&self, other: &PermGroup) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `sub` is normal in `self`; `sub` must be a subgroup.
    pub fn is_normal(&self, sub: &PermGroup) -> Result<bool> {
        for s in sub.generators() {
            for g in &self.generators {
                if !sub.contains(&s.conjugate_by(g))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> PermGroup {
        PermGroup::from_cycle_strings(4, &["(0 1)", "(0 1 2 3)"]).unwrap()
    }

    #[test]
    fn single_transposition_has_order_two() {
        let g = PermGroup::from_cycle_strings(2, &["(0 1)"]).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn s4_order_and_membership() {
        let g = s4();
        assert_eq!(g.order(), 24);
        assert!(g.contains(&g.identity()).unwrap());
        let odd = Permutation::from_cycles(4, "(0 1)").unwrap();
        assert!(g.contains(&odd).unwrap());
    }

    #[test]
    fn c3_does_not_contain_transposition() {
        let g = PermGroup::from_cycle_strings(3, &["(0 1 2)"]).unwrap();
        let t = Permutation::from_cycles(3, "(0 1)").unwrap();
        assert!(!g.contains(&t).unwrap());
        assert_eq!(g.elements().unwrap().len(), 3);
    }

    #[test]
    fn a4_generators_inside_s4() {
        let g = s4();
        let a4 = PermGroup::from_cycle_strings(4, &["(0 1 2)", "(1 2 3)"]).unwrap();
        assert!(g.contains_group(&a4).unwrap());
        assert_eq!(a4.order(), 12);
    }

    #[test]
    fn elements_are_distinct_and_counted() {
        let g = s4();
        let elems = g.elements().unwrap();
        assert_eq!(elems.len(), 24);
        let set: std::collections::HashSet<_> = elems.iter().collect();
        assert_eq!(set.len(), 24);
        for e in &elems {
            assert!(g.contains(e).unwrap());
        }
    }

    #[test]
    fn orbit_of_transitive_group_is_everything() {
        let g = s4();
        assert_eq!(g.orbit(0).unwrap(), vec![0, 1, 2, 3]);
        let h = PermGroup::from_cycle_strings(3, &["(0 1)"]).unwrap();
        assert_eq!(h.orbit(2).unwrap(), vec![2]);
    }

    #[test]
    fn capacity_error_on_small_bound() {
        let g = s4().with_capacity_of(10);
        assert!(matches!(g.elements(), Err(Error::Capacity(_))));
    }

    #[test]
    fn random_element_is_deterministic_and_member() {
        let g = s4();
        let a = g.random_element(7);
        let b = g.random_element(7);
        assert_eq!(a, b);
        assert!(g.contains(&a).unwrap());
    }

    #[test]
    fn exponent_of_s4_is_12() {
        assert_eq!(s4().exponent().unwrap(), 12);
    }

    #[test]
    fn trivial_group_has_order_one() {
        let g = PermGroup::trivial(5);
        assert_eq!(g.order(), 1);
        assert_eq!(g.elements().unwrap().len(), 1);
    }
}
