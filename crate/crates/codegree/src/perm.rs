//! Permutations of {0, .., n-1} with left-to-right composition.
//!
//! The global action convention: permutations act on points on the right,
//! so `(a * b)(x) = b(a(x))` and `x^g = g.apply(x)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity on `degree` points.
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Builds a permutation from an explicit image list; the list must be a
    /// bijection on {0, .., n-1}.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Input(format!(
                    "image list {:?} is not a bijection on 0..{}",
                    images, n
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle notation, zero-based, e.g. `(0 1 2)(3 4)`.
    /// The identity is spelled `()`.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::Input("empty permutation literal".into()));
        }
        let mut chars = s.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(Error::Input(format!("expected '(' in cycle notation, got '{}'", c)));
            }
            chars.next();
            let mut cycle: Vec<usize> = Vec::new();
            let mut num = String::new();
            loop {
                match chars.next() {
                    Some(')') => {
                        if !num.is_empty() {
                            cycle.push(parse_point(&num, degree)?);
                        }
                        break;
                    }
                    Some(d) if d.is_ascii_digit() => num.push(d),
                    Some(d) if d.is_whitespace() || d == ',' => {
                        if !num.is_empty() {
                            cycle.push(parse_point(&num, degree)?);
                            num.clear();
                        }
                    }
                    Some(d) => {
                        return Err(Error::Input(format!("unexpected '{}' in cycle notation", d)))
                    }
                    None => return Err(Error::Input("unterminated cycle".into())),
                }
            }
            for &pt in &cycle {
                if touched[pt] {
                    return Err(Error::Input(format!("point {} repeated across cycles", pt)));
                }
                touched[pt] = true;
            }
            for i in 0..cycle.len() {
                images[cycle[i]] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Left-to-right composition: `(self * other)(x) = other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `h^{-1} g h`, the conjugate of `g = self` by `h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        h.inverse().compose(self).compose(h)
    }

    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().compose(&other.inverse()).compose(self).compose(other)
    }

    pub fn pow(&self, e: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord: u64 = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// Smallest moved point, or `None` for the identity.
    pub fn min_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &j)| *i != j).map(|(i, _)| i)
    }

    /// Disjoint-cycle string, fixed points omitted; identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&p.to_string());
                first = false;
                p = self.images[p];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

fn parse_point(s: &str, degree: usize) -> Result<usize> {
    let v: usize = s
        .parse()
        .map_err(|_| Error::Input(format!("bad point '{}' in cycle notation", s)))?;
    if v >= degree {
        return Err(Error::Input(format!("point {} out of range for degree {}", v, degree)));
    }
    Ok(v)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_composes_trivially() {
        let id = Permutation::identity(3);
        let s = Permutation::from_cycles(3, "(0 1)").unwrap();
        assert_eq!(id.compose(&s), s);
        assert_eq!(s.compose(&id), s);
    }

    #[test]
    fn left_to_right_convention() {
        // sigma=(0 1), tau=(1 2): sigma*tau = (0 2 1) under (a*b)(x)=b(a(x)).
        let sigma = Permutation::from_cycles(3, "(0 1)").unwrap();
        let tau = Permutation::from_cycles(3, "(1 2)").unwrap();
        let prod = sigma.compose(&tau);
        assert_eq!(prod, Permutation::from_cycles(3, "(0 2 1)").unwrap());
    }

    #[test]
    fn inverse_axiom() {
        let s = Permutation::from_cycles(5, "(0 1 2)(3 4)").unwrap();
        assert!(s.compose(&s.inverse()).is_identity());
    }

    #[test]
    fn conjugate_by_identity() {
        let g = Permutation::from_cycles(4, "(0 1 2 3)").unwrap();
        assert_eq!(g.conjugate_by(&Permutation::identity(4)), g);
    }

    #[test]
    fn cycle_round_trip() {
        let g = Permutation::from_cycles(6, "(0 1 2)(3 4)").unwrap();
        let again = Permutation::from_cycles(6, &g.to_cycle_string()).unwrap();
        assert_eq!(g, again);
        assert_eq!(Permutation::identity(4).to_cycle_string(), "()");
    }

    #[test]
    fn order_is_lcm_of_cycles() {
        let g = Permutation::from_cycles(5, "(0 1 2)(3 4)").unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_cycles(3, "(0 1)(1 2)").is_err());
        assert!(Permutation::from_cycles(3, "(0 7)").is_err());
    }
}
