//! Permutations of `{0, .., degree - 1}` and their cycle notation.
//!
//! Points are 0-based in memory and 1-based in every piece of text this
//! module reads or writes. Composition is a right action: the image of `p`
//! under `a * b` is `b(a(p))`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A bijection on `{0, .., degree - 1}` stored as its image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

/// A single cycle of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    points: Vec<usize>,
}

impl Cycle {
    /// Builds a cycle from distinct points; fails on fewer than two points or
    /// on repeats.
    pub fn new(points: Vec<usize>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::invalid("a cycle moves at least two points"));
        }
        let distinct: BTreeSet<_> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::invalid("cycle points must be distinct"));
        }
        Ok(Cycle { points })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// The cycle length `|tau|`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The permutation of the given degree acting as this cycle.
    pub fn to_permutation(&self, degree: usize) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..degree).collect();
        for (i, &p) in self.points.iter().enumerate() {
            if p >= degree {
                return Err(Error::PointOutOfRange { point: p, degree });
            }
            images[p] = self.points[(i + 1) % self.points.len()];
        }
        Ok(Permutation { images })
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p + 1)?;
        }
        write!(f, ")")
    }
}

/// True iff the supports of the cycles are pairwise disjoint.
pub fn are_independent(cycles: &[Cycle]) -> bool {
    let mut seen = BTreeSet::new();
    cycles
        .iter()
        .flat_map(|c| c.points.iter())
        .all(|p| seen.insert(*p))
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Wraps an image vector, checking that it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            if p >= n {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: n,
                });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid(format!(
                    "image {} appears twice",
                    p + 1
                )));
            }
        }
        Ok(Permutation { images })
    }

    /// Product of pairwise independent cycles on `degree` points.
    pub fn from_cycles(cycles: &[Cycle], degree: usize) -> Result<Self> {
        if !are_independent(cycles) {
            return Err(Error::invalid("cycles are not independent"));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        for c in cycles {
            for (i, &p) in c.points.iter().enumerate() {
                if p >= degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                images[p] = c.points[(i + 1) % c.points.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4 5)`.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        parse_cycle_notation(text, degree)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self` followed by `other`; fails on a degree mismatch.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked composition; degrees must agree.
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&p| other.images[p]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p] = i;
        }
        Permutation { images }
    }

    /// `self` raised to a (possibly negative) exponent.
    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Points moved by the permutation.
    pub fn support(&self) -> BTreeSet<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, p)| i != *p)
            .map(|(i, _)| i)
            .collect()
    }

    /// Least moved point, if any.
    pub fn least_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, p)| i != *p).map(|(i, _)| i)
    }

    /// Disjoint cycle decomposition, fixed points omitted, each cycle starting
    /// at its least point and cycles ordered by least point.
    pub fn cycles(&self) -> Vec<Cycle> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut points = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                points.push(p);
                p = self.images[p];
            }
            out.push(Cycle { points });
        }
        out
    }

    /// The same permutation placed on `offset..offset + degree` inside a
    /// larger domain of `new_degree` points.
    pub fn embed(&self, offset: usize, new_degree: usize) -> Result<Permutation> {
        if offset + self.degree() > new_degree {
            return Err(Error::invalid(format!(
                "cannot embed degree {} at offset {} into degree {}",
                self.degree(),
                offset,
                new_degree
            )));
        }
        let mut images: Vec<usize> = (0..new_degree).collect();
        for (i, &p) in self.images.iter().enumerate() {
            images[offset + i] = offset + p;
        }
        Ok(Permutation { images })
    }

    /// Applies the permutation to each point of a set.
    pub fn image_of_set(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter().map(|&p| self.images[p]).collect()
    }
}

impl Mul<&Permutation> for &Permutation {
    type Output = Permutation;

    /// Right-action product; panics if the degrees differ.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in &cycles {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [deg {}]", self.degree())
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

/// Parses a concatenation of parenthesised cycles with 1-based labels
/// separated by commas or whitespace. The empty string and `()` are the
/// identity. Cycles in one literal must be pairwise disjoint. Error positions
/// are 0-based character offsets.
pub fn parse_cycle_notation(text: &str, degree: usize) -> Result<Permutation> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let mut images: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];

    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };

    loop {
        skip_ws(&mut pos);
        if pos == chars.len() {
            break;
        }
        if chars[pos] != '(' {
            return Err(parse_err(pos, format!("expected '(', found '{}'", chars[pos])));
        }
        let open = pos;
        pos += 1;
        let mut cycle: Vec<(usize, usize)> = Vec::new();
        let mut expect_number = true;
        let mut after_comma = false;
        loop {
            skip_ws(&mut pos);
            if pos == chars.len() {
                return Err(parse_err(open, "unclosed '('"));
            }
            let c = chars[pos];
            if c == ')' {
                if after_comma {
                    return Err(parse_err(pos, "expected a point after ','"));
                }
                pos += 1;
                break;
            } else if c == ',' {
                if expect_number {
                    return Err(parse_err(pos, "unexpected ','"));
                }
                expect_number = true;
                after_comma = true;
                pos += 1;
            } else if c.is_ascii_digit() {
                let start = pos;
                let mut value: usize = 0;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    let digit = chars[pos].to_digit(10).unwrap() as usize;
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(digit))
                        .ok_or_else(|| parse_err(start, "point label too large"))?;
                    pos += 1;
                }
                if value == 0 || value > degree {
                    return Err(parse_err(
                        start,
                        format!("point {value} out of range 1..{degree}"),
                    ));
                }
                let point = value - 1;
                if cycle.iter().any(|&(p, _)| p == point) {
                    return Err(parse_err(start, format!("point {value} repeated in cycle")));
                }
                if used[point] {
                    return Err(parse_err(
                        start,
                        format!("point {value} appears in overlapping cycles"),
                    ));
                }
                cycle.push((point, start));
                expect_number = false;
                after_comma = false;
            } else if c == '(' {
                return Err(parse_err(pos, "nested '('"));
            } else {
                return Err(parse_err(pos, format!("unexpected character '{c}'")));
            }
        }
        for (i, &(p, _)) in cycle.iter().enumerate() {
            used[p] = true;
            images[p] = cycle[(i + 1) % cycle.len()].0;
        }
    }
    Ok(Permutation { images })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    #[test]
    fn parse_three_cycle() {
        let a = p("(1,2,3)", 5);
        assert_eq!(a.images(), &[1, 2, 0, 3, 4]);
        assert_eq!(p("(1 2 3)", 5), a);
        assert_eq!(p("  ( 1 , 2  3 ) ", 5), a);
    }

    #[test]
    fn parse_identity_forms() {
        assert!(p("()", 4).is_identity());
        assert!(p("", 4).is_identity());
        assert_eq!(p("()", 4).degree(), 4);
        assert_eq!(p("(2)", 3), Permutation::identity(3));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let overlap = Permutation::parse("(1,2)(2,3)", 3).unwrap_err();
        assert!(matches!(overlap, Error::Parse { position: 6, .. }), "{overlap}");
        let range = Permutation::parse("(1,4)", 3).unwrap_err();
        assert!(matches!(range, Error::Parse { position: 3, .. }));
        let repeat = Permutation::parse("(1,2,1)", 3).unwrap_err();
        assert!(matches!(repeat, Error::Parse { position: 5, .. }));
        let unclosed = Permutation::parse("(1,2", 3).unwrap_err();
        assert!(matches!(unclosed, Error::Parse { position: 0, .. }));
        assert!(Permutation::parse("1,2)", 3).is_err());
        assert!(Permutation::parse("(1,,2)", 3).is_err());
        assert!(Permutation::parse("(1,2,)", 3).is_err());
        assert!(Permutation::parse("(0,1)", 3).is_err());
        assert!(Permutation::parse("((1,2))", 3).is_err());
    }

    #[test]
    fn compose_examples() {
        let t = p("(1,2)", 3);
        assert!(t.compose(&t).unwrap().is_identity());
        let c = p("(1,2,3)", 3);
        assert_eq!(c.compose(&c).unwrap(), p("(1,3,2)", 3));
        assert_eq!(c.compose(&Permutation::identity(3)).unwrap(), c);
        assert!(matches!(
            c.compose(&Permutation::identity(4)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn right_action_convention() {
        // 1 -> 2 under a, then 2 -> 3 under b
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        assert_eq!((&a * &b).image(0), 2);
        assert_eq!(&a * &b, p("(1,3,2)", 3));
    }

    #[test]
    fn cycle_decomposition_examples() {
        assert!(Permutation::identity(4).cycles().is_empty());
        let a = Permutation::from_images(vec![1, 0, 3, 4, 2]).unwrap();
        let cycles = a.cycles();
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0].points(), &[0, 1]);
        assert_eq!(cycles[1].points(), &[2, 3, 4]);
        assert_eq!(a.to_string(), "(1,2)(3,4,5)");
        let b = p("(3,1)(4,2)", 4);
        let cycles = b.cycles();
        assert!(cycles.iter().all(|c| c.len() == 2));
        assert!(are_independent(&cycles));
        assert_eq!(b.to_string(), "(1,3)(2,4)");
    }

    #[test]
    fn independence() {
        let c = |v: Vec<usize>| Cycle::new(v).unwrap();
        assert!(are_independent(&[c(vec![0, 1]), c(vec![2, 3])]));
        assert!(!are_independent(&[c(vec![0, 1]), c(vec![1, 2])]));
        assert!(are_independent(&[]));
        assert!(Cycle::new(vec![1]).is_err());
        assert!(Cycle::new(vec![1, 1]).is_err());
    }

    #[test]
    fn support_examples() {
        assert!(Permutation::identity(3).support().is_empty());
        assert_eq!(p("(1,2,3)", 5).support(), [0, 1, 2].into_iter().collect());
        assert_eq!(p("(1,2)(4,5)", 5).support(), [0, 1, 3, 4].into_iter().collect());
    }

    #[test]
    fn order_and_powers() {
        let a = p("(1,2)(3,4,5)", 5);
        assert_eq!(a.order(), 6);
        assert!(a.pow(6).is_identity());
        assert_eq!(a.pow(-1), a.inverse());
        assert_eq!(a.pow(3), p("(1,2)", 5));
        assert_eq!(Permutation::identity(2).order(), 1);
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn embed_shifts_points() {
        let a = p("(1,2)", 2);
        assert_eq!(a.embed(3, 6).unwrap(), p("(4,5)", 6));
        assert!(a.embed(5, 6).is_err());
    }
}
