//! Wielandt k-closures: tuple orbits, membership, and exact closure search.
//!
//! `x` lies in the k-closure of `G` iff every k-tuple and its image under `x`
//! share a `G`-orbit. The closure is computed by image backtracking along the
//! base `0, 1, .., n-1`, one stabilizer level at a time from the bottom up.

use std::collections::BTreeSet;
use std::time::Instant;

use serde_json::json;

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_ELEMENT_CAP};
use crate::perm::Permutation;
use crate::report::VerificationReport;

pub const DEFAULT_TUPLE_CAP: usize = 2_000_000;
pub const DEFAULT_BRUTE_DEGREE: usize = 7;
pub const DEFAULT_DEGREE_CAP_K2: usize = 16;
pub const DEFAULT_DEGREE_CAP_K3: usize = 12;

/// Resource caps shared by the closure routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `degree^k` for which a tuple index is built.
    pub tuple_cap: usize,
    /// Largest group enumerated element by element.
    pub element_cap: usize,
    /// Largest degree at which all of `Sym(degree)` is filtered.
    pub brute_degree: usize,
    /// Largest degree searched for a 2-closure.
    pub degree_cap_k2: usize,
    /// Largest degree searched for a k-closure with k >= 3.
    pub degree_cap_k3: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            tuple_cap: DEFAULT_TUPLE_CAP,
            element_cap: DEFAULT_ELEMENT_CAP,
            brute_degree: DEFAULT_BRUTE_DEGREE,
            degree_cap_k2: DEFAULT_DEGREE_CAP_K2,
            degree_cap_k3: DEFAULT_DEGREE_CAP_K3,
        }
    }
}

/// Orbit labels for the diagonal action on `k`-tuples. Tuples are encoded in
/// base `degree`, first coordinate most significant, so index order is
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct TupleOrbitIndex {
    degree: usize,
    k: usize,
    labels: Vec<u32>,
    orbit_count: usize,
}

impl TupleOrbitIndex {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_count
    }

    pub fn tuple_count(&self) -> usize {
        self.labels.len()
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.k);
        tuple.iter().fold(0, |acc, &p| acc * self.degree + p)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut t = vec![0; self.k];
        for slot in t.iter_mut().rev() {
            *slot = index % self.degree;
            index /= self.degree;
        }
        t
    }

    pub fn label(&self, tuple: &[usize]) -> u32 {
        self.labels[self.encode(tuple)]
    }

    pub fn label_at(&self, index: usize) -> u32 {
        self.labels[index]
    }

    fn image_index(&self, mut index: usize, x: &[usize]) -> usize {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += x[index % self.degree] * place;
            index /= self.degree;
            place *= self.degree;
        }
        out
    }

    /// True iff every tuple and its image under `x` share a label.
    pub fn preserved_by(&self, x: &Permutation) -> bool {
        let images = x.images();
        (0..self.labels.len()).all(|i| self.labels[i] == self.labels[self.image_index(i, images)])
    }

    /// First tuple moved to a different orbit by `x`, if any.
    pub fn first_violation(&self, x: &Permutation) -> Option<Vec<usize>> {
        let images = x.images();
        (0..self.labels.len())
            .find(|&i| self.labels[i] != self.labels[self.image_index(i, images)])
            .map(|i| self.decode(i))
    }
}

fn tuple_count(degree: usize, k: usize) -> Option<usize> {
    degree.checked_pow(k as u32)
}

/// Labels the orbits of `G` on `Omega^k`, in order of least tuple.
pub fn tuple_orbits(group: &PermGroup, k: usize, cap: usize) -> Result<TupleOrbitIndex> {
    if k == 0 {
        return Err(Error::invalid("arity k must be at least 1"));
    }
    let n = group.degree();
    let total = match tuple_count(n, k) {
        Some(t) if t <= cap => t,
        Some(t) => return Err(Error::cap(format!("{k}-tuple index on {n} points"), t as u128, cap as u128)),
        None => return Err(Error::cap(format!("{k}-tuple index on {n} points"), u128::MAX, cap as u128)),
    };
    let mut index = TupleOrbitIndex {
        degree: n,
        k,
        labels: vec![u32::MAX; total],
        orbit_count: 0,
    };
    let gens: Vec<&[usize]> = group.generators().iter().map(|g| g.images()).collect();
    let mut stack = Vec::new();
    for start in 0..total {
        if index.labels[start] != u32::MAX {
            continue;
        }
        let label = index.orbit_count as u32;
        index.orbit_count += 1;
        index.labels[start] = label;
        stack.push(start);
        while let Some(t) = stack.pop() {
            for g in &gens {
                let u = index.image_index(t, g);
                if index.labels[u] == u32::MAX {
                    index.labels[u] = label;
                    stack.push(u);
                }
            }
        }
    }
    Ok(index)
}

fn check_arity(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::invalid("arity k must be at least 1"))
    } else {
        Ok(())
    }
}

/// Membership in `G^(k)`: every k-tuple is mapped into its own `G`-orbit.
pub fn in_k_closure(group: &PermGroup, x: &Permutation, k: usize, limits: &Limits) -> Result<bool> {
    check_arity(k)?;
    if x.degree() != group.degree() {
        return Err(Error::DegreeMismatch {
            expected: group.degree(),
            found: x.degree(),
        });
    }
    let index = tuple_orbits(group, k, limits.tuple_cap)?;
    Ok(index.preserved_by(x))
}

/// Backtracking search for one element of the closure with a prescribed
/// prefix of images.
struct ImageSearch<'a> {
    n: usize,
    k: usize,
    index: &'a TupleOrbitIndex,
    pairs: Option<&'a TupleOrbitIndex>,
    /// Points sharing a `G`-orbit with each point, ascending.
    candidates: Vec<Vec<usize>>,
    images: Vec<usize>,
    used: Vec<bool>,
    counter: Vec<usize>,
}

impl<'a> ImageSearch<'a> {
    fn new(group: &PermGroup, index: &'a TupleOrbitIndex, pairs: Option<&'a TupleOrbitIndex>) -> Self {
        let n = group.degree();
        let orbits = group.orbits();
        let candidates = (0..n).map(|p| orbits.block_of(p).to_vec()).collect();
        ImageSearch {
            n,
            k: index.arity(),
            index,
            pairs,
            candidates,
            images: vec![0; n],
            used: vec![false; n],
            counter: vec![0; index.arity()],
        }
    }

    /// An element fixing `0..level` and mapping `level` to `target`.
    fn find(&mut self, level: usize, target: usize) -> Option<Permutation> {
        self.used.iter_mut().for_each(|u| *u = false);
        for p in 0..level {
            self.images[p] = p;
            self.used[p] = true;
        }
        self.images[level] = target;
        self.used[target] = true;
        if !self.consistent(level) {
            return None;
        }
        if self.extend(level + 1) {
            Some(Permutation::from_images(self.images.clone()).expect("search builds bijections"))
        } else {
            None
        }
    }

    fn extend(&mut self, m: usize) -> bool {
        if m == self.n {
            return true;
        }
        for ci in 0..self.candidates[m].len() {
            let v = self.candidates[m][ci];
            if self.used[v] {
                continue;
            }
            self.images[m] = v;
            self.used[v] = true;
            if self.consistent(m) && self.extend(m + 1) {
                return true;
            }
            self.used[v] = false;
        }
        false
    }

    /// Checks every tuple over `0..=m` that contains `m`; earlier tuples were
    /// checked when their largest point was assigned.
    fn consistent(&mut self, m: usize) -> bool {
        if let Some(pairs) = self.pairs {
            let n = self.n;
            let im = self.images[m];
            for a in 0..=m {
                let ia = self.images[a];
                if pairs.labels[a * n + m] != pairs.labels[ia * n + im]
                    || pairs.labels[m * n + a] != pairs.labels[im * n + ia]
                {
                    return false;
                }
            }
        }
        self.tuples_consistent(m)
    }

    fn tuples_consistent(&mut self, m: usize) -> bool {
        let (n, k) = (self.n, self.k);
        let labels = &self.index.labels;
        // `first` is the position of the first occurrence of `m`; earlier
        // positions range over 0..m, later ones over 0..=m.
        for first in 0..k {
            if first > 0 && m == 0 {
                break;
            }
            self.counter.iter_mut().for_each(|c| *c = 0);
            self.counter[first] = m;
            loop {
                let mut idx = 0;
                let mut img = 0;
                for &p in &self.counter {
                    idx = idx * n + p;
                    img = img * n + self.images[p];
                }
                if labels[idx] != labels[img] {
                    return false;
                }
                if !advance(&mut self.counter, first, m) {
                    break;
                }
            }
        }
        true
    }
}

/// Steps a mixed-radix counter whose position `first` is pinned; positions
/// before it range over `0..m` and after it over `0..=m`.
fn advance(counter: &mut [usize], first: usize, m: usize) -> bool {
    for pos in (0..counter.len()).rev() {
        if pos == first {
            continue;
        }
        let radix = if pos < first { m } else { m + 1 };
        counter[pos] += 1;
        if counter[pos] < radix {
            return true;
        }
        counter[pos] = 0;
    }
    false
}

/// The k-closure `G^(k)` computed by image backtracking.
///
/// Works down the base `0..n` from the last level: at level `i` every point
/// of the `G`-orbit of `i` not yet reached by the known part of the closure
/// is tested for an element fixing `0..i` and mapping `i` there. Success adds
/// a generator; failure rules out the whole orbit of the target under the
/// current level stabilizer.
pub fn k_closure(group: &PermGroup, k: usize, limits: &Limits) -> Result<PermGroup> {
    check_arity(k)?;
    let degree_cap = match k {
        1 => usize::MAX,
        2 => limits.degree_cap_k2,
        _ => limits.degree_cap_k3,
    };
    if group.degree() > degree_cap {
        return Err(Error::cap(
            format!("{k}-closure search degree"),
            group.degree() as u128,
            degree_cap as u128,
        ));
    }
    let index = tuple_orbits(group, k, limits.tuple_cap)?;
    let pairs = if k > 2 {
        Some(tuple_orbits(group, 2, limits.tuple_cap)?)
    } else {
        None
    };
    let n = group.degree();
    let base: Vec<usize> = (0..n).collect();
    let mut chain = StabChain::new(n, group.generators(), &base);
    let mut gens = group.generators().to_vec();
    let mut search = ImageSearch::new(group, &index, pairs.as_ref());

    for level in (0..n).rev() {
        let mut ruled_out = vec![false; n];
        let targets: Vec<usize> = search.candidates[level]
            .iter()
            .copied()
            .filter(|&t| t > level)
            .collect();
        for target in targets {
            if ruled_out[target] || chain.transversal(level, target).is_some() {
                continue;
            }
            match search.find(level, target) {
                Some(x) => {
                    let grew = chain.extend(&x);
                    debug_assert!(grew);
                    gens.push(x);
                }
                None => {
                    for p in orbit_under(chain.stabilizer_gens(level), target, n) {
                        ruled_out[p] = true;
                    }
                }
            }
        }
    }
    Ok(PermGroup::from_chain(n, gens, chain))
}

fn orbit_under(gens: &[Permutation], start: usize, n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut orbit = vec![start];
    let mut i = 0;
    while i < orbit.len() {
        let p = orbit[i];
        for g in gens {
            let q = g.image(p);
            if !seen[q] {
                seen[q] = true;
                orbit.push(q);
            }
        }
        i += 1;
    }
    orbit
}

/// Returns `G` unchanged when some base has at most `k - 1` points, since
/// then `G^(k) = G`; otherwise `None` and the caller must search.
pub fn closure_via_base_shortcut(group: &PermGroup, k: usize) -> Option<PermGroup> {
    if k == 0 {
        return None;
    }
    (group.minimal_base_size() < k).then(|| group.clone())
}

/// How a closedness verdict was reached.
#[derive(Clone, Debug)]
pub struct Closedness {
    pub closed: bool,
    pub via_shortcut: bool,
    pub closure_order: u128,
    /// A closure generator outside `G`, when the closure is larger.
    pub witness: Option<Permutation>,
}

/// Decides `G^(k) = G`, using the base shortcut when it applies.
pub fn closedness(group: &PermGroup, k: usize, limits: &Limits) -> Result<Closedness> {
    check_arity(k)?;
    if closure_via_base_shortcut(group, k).is_some() {
        return Ok(Closedness {
            closed: true,
            via_shortcut: true,
            closure_order: group.order(),
            witness: None,
        });
    }
    let closure = k_closure(group, k, limits)?;
    let witness = strict_containment_witness(group, &closure);
    Ok(Closedness {
        closed: closure.order() == group.order(),
        via_shortcut: false,
        closure_order: closure.order(),
        witness,
    })
}

pub fn is_k_closed(group: &PermGroup, k: usize, limits: &Limits) -> Result<bool> {
    Ok(closedness(group, k, limits)?.closed)
}

/// A generator of `larger` that is not in `group`.
pub fn strict_containment_witness(group: &PermGroup, larger: &PermGroup) -> Option<Permutation> {
    larger.generators().iter().find(|g| !group.has(g)).cloned()
}

/// Every permutation of `Sym(degree)` passing the membership test, in
/// lexicographic order of image vectors. Independent of the backtracking
/// search; only feasible at small degree.
pub fn brute_force_closure_elements(group: &PermGroup, k: usize, limits: &Limits) -> Result<Vec<Permutation>> {
    check_arity(k)?;
    let n = group.degree();
    if n > limits.brute_degree {
        return Err(Error::cap("brute-force closure degree", n as u128, limits.brute_degree as u128));
    }
    let index = tuple_orbits(group, k, limits.tuple_cap)?;
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    loop {
        let x = Permutation::from_images(images.clone()).expect("permutation");
        if index.preserved_by(&x) {
            out.push(x);
        }
        if !next_permutation(&mut images) {
            break;
        }
    }
    Ok(out)
}

/// Brute-force closure as a group.
pub fn brute_force_closure(group: &PermGroup, k: usize, limits: &Limits) -> Result<PermGroup> {
    let elems = brute_force_closure_elements(group, k, limits)?;
    let n = group.degree();
    let mut chain = StabChain::new(n, &[], &[]);
    let mut gens = Vec::new();
    for x in elems {
        if chain.extend(&x) {
            gens.push(x);
        }
    }
    Ok(PermGroup::from_chain(n, gens, chain))
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// One Sylow subgroup per prime dividing `|G|`, for abelian `G`.
pub fn abelian_sylow_subgroups(group: &PermGroup) -> Result<Vec<(u64, PermGroup)>> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    group
        .prime_divisors()
        .into_iter()
        .map(|p| Ok((p, group.abelian_hall_subgroup(&[p])?)))
        .collect()
}

/// Compares `G^(k)` with the group generated by the k-closures of the Sylow
/// subgroups of abelian `G`, each side computed independently.
pub fn closure_product_check(group: &PermGroup, k: usize, limits: &Limits) -> Result<VerificationReport> {
    if k < 2 {
        return Err(Error::invalid("the Sylow product identity needs k >= 2"));
    }
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let started = Instant::now();
    let mut report = VerificationReport::new(
        "closure-product",
        json!({
            "degree": group.degree(),
            "generators": group.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "k": k,
        }),
    );
    let left = k_closure(group, k, limits)?;
    let sylows = abelian_sylow_subgroups(group)?;
    let mut right_gens = Vec::new();
    let mut parts = Vec::new();
    let mut product_of_orders: u128 = 1;
    for (p, sylow) in &sylows {
        let closure = k_closure(sylow, k, limits)?;
        product_of_orders *= closure.order();
        parts.push(json!({
            "prime": p,
            "sylow_order": sylow.order().to_string(),
            "closure_order": closure.order().to_string(),
        }));
        right_gens.extend(closure.generators().iter().cloned());
    }
    let right = PermGroup::new(group.degree(), right_gens)?;
    report.set("left_order", left.order().to_string());
    report.set("right_order", right.order().to_string());
    report.set("sylow_closures", parts);
    report.check_eq("|G^(k)| equals |prod P^(k)|", left.order(), right.order());
    report.check(
        "G^(k) and prod P^(k) contain each other",
        "true",
        left.is_subgroup_of(&right) && right.is_subgroup_of(&left),
        left.is_subgroup_of(&right) && right.is_subgroup_of(&left),
    );
    report.check_eq("product is direct", product_of_orders, right.order());
    Ok(report.finish(started))
}

/// Orbit sets of a group, used to compare orbit partitions.
pub fn orbit_sets(group: &PermGroup) -> BTreeSet<Vec<usize>> {
    group.orbits().blocks().iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(degree, gens).unwrap()
    }

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn tuple_orbit_examples() {
        let triv = PermGroup::trivial(4);
        assert_eq!(tuple_orbits(&triv, 1, 100).unwrap().orbit_count(), 4);
        let z5 = g(5, &["(1,2,3,4,5)"]);
        assert_eq!(tuple_orbits(&z5, 1, 100).unwrap().orbit_count(), 1);
        let s3 = g(3, &["(1,2,3)", "(1,2)"]);
        let idx = tuple_orbits(&s3, 2, 100).unwrap();
        assert_eq!(idx.orbit_count(), 2);
        assert_eq!(idx.label(&[0, 0]), 0);
        assert_eq!(idx.label(&[0, 1]), 1);
        assert_eq!(idx.label(&[2, 2]), 0);
        assert_eq!(idx.tuple_count(), 9);
    }

    #[test]
    fn tuple_cap_reports_budget() {
        let s3 = g(10, &["(1,2,3)"]);
        match tuple_orbits(&s3, 3, 999) {
            Err(Error::CapExceeded { required, cap, .. }) => {
                assert_eq!(required, 1000);
                assert_eq!(cap, 999);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(tuple_orbits(&s3, 0, 999).is_err());
    }

    #[test]
    fn labels_follow_lexicographic_first_occurrence() {
        let z4 = g(4, &["(1,2,3,4)"]);
        let idx = tuple_orbits(&z4, 2, 100).unwrap();
        let mut next = 0;
        for i in 0..idx.tuple_count() {
            let l = idx.label_at(i);
            assert!(l <= next);
            if l == next {
                next += 1;
            }
        }
        assert_eq!(next as usize, idx.orbit_count());
    }

    #[test]
    fn membership_examples() {
        let s3c2 = g(5, &["(1,2,3)", "(1,2)(4,5)"]);
        for x in s3c2.elements(100).unwrap() {
            assert!(in_k_closure(&s3c2, &x, 2, &lim()).unwrap());
        }
        assert!(in_k_closure(&s3c2, &p("(4,5)", 5), 2, &lim()).unwrap());
        assert!(!in_k_closure(&s3c2, &p("(4,5)", 5), 3, &lim()).unwrap());
        assert!(!in_k_closure(&s3c2, &p("(1,4)", 5), 1, &lim()).unwrap());
        assert!(in_k_closure(&s3c2, &Permutation::identity(4), 2, &lim()).is_err());
    }

    #[test]
    fn closure_examples() {
        let s3c2 = g(5, &["(1,2,3)", "(1,2)(4,5)"]);
        let c = k_closure(&s3c2, 2, &lim()).unwrap();
        assert_eq!(c.order(), 12);
        assert!(c.same_group(&g(5, &["(1,2,3)", "(1,2)", "(4,5)"])));
        let s3 = g(3, &["(1,2,3)", "(1,2)"]);
        assert!(k_closure(&s3, 2, &lim()).unwrap().same_group(&s3));
        let v = g(4, &["(1,2)(3,4)"]);
        let c = k_closure(&v, 1, &lim()).unwrap();
        assert!(c.same_group(&g(4, &["(1,2)", "(3,4)"])));
    }

    #[test]
    fn closedness_examples() {
        let s3 = g(3, &["(1,2,3)", "(1,2)"]);
        assert!(is_k_closed(&s3, 2, &lim()).unwrap());
        let s3c2 = g(5, &["(1,2,3)", "(1,2)(4,5)"]);
        let verdict = closedness(&s3c2, 2, &lim()).unwrap();
        assert!(!verdict.closed);
        assert_eq!(verdict.closure_order, 12);
        assert!(!s3c2.has(verdict.witness.as_ref().unwrap()));
        let verdict = closedness(&s3c2, 3, &lim()).unwrap();
        assert!(verdict.closed && verdict.via_shortcut);
    }

    #[test]
    fn base_shortcut_examples() {
        let z4 = g(4, &["(1,2,3,4)"]);
        assert!(closure_via_base_shortcut(&z4, 2).is_some());
        assert!(closure_via_base_shortcut(&z4, 1).is_none());
        let s3 = g(3, &["(1,2,3)", "(1,2)"]);
        assert!(closure_via_base_shortcut(&s3, 3).is_some());
        assert!(closure_via_base_shortcut(&s3, 2).is_none());
        assert!(closure_via_base_shortcut(&PermGroup::trivial(2), 1).is_some());
    }

    #[test]
    fn brute_force_matches_small_cases() {
        let s3c2 = g(5, &["(1,2,3)", "(1,2)(4,5)"]);
        assert_eq!(brute_force_closure_elements(&s3c2, 2, &lim()).unwrap().len(), 12);
        assert_eq!(brute_force_closure_elements(&s3c2, 1, &lim()).unwrap().len(), 12);
        assert_eq!(brute_force_closure_elements(&s3c2, 3, &lim()).unwrap().len(), 6);
        let big = PermGroup::trivial(8);
        assert!(matches!(
            brute_force_closure_elements(&big, 2, &lim()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn sylow_examples() {
        let z6 = g(5, &["(1,2,3)(4,5)"]);
        let parts = abelian_sylow_subgroups(&z6).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, 2);
        assert!(parts[0].1.same_group(&g(5, &["(4,5)"])));
        assert_eq!(parts[1].1.order(), 3);
        let two_group = g(4, &["(1,2)", "(3,4)"]);
        let parts = abelian_sylow_subgroups(&two_group).unwrap();
        assert_eq!(parts.len(), 1);
        assert!(parts[0].1.same_group(&two_group));
        assert!(abelian_sylow_subgroups(&PermGroup::trivial(3)).unwrap().is_empty());
        assert!(matches!(
            abelian_sylow_subgroups(&g(3, &["(1,2,3)", "(1,2)"])),
            Err(Error::NotAbelian)
        ));
    }

    #[test]
    fn product_check_rejects_bad_input() {
        let z6 = g(5, &["(1,2,3)(4,5)"]);
        assert!(closure_product_check(&z6, 1, &lim()).is_err());
        assert!(matches!(
            closure_product_check(&g(3, &["(1,2,3)", "(1,2)"]), 2, &lim()),
            Err(Error::NotAbelian)
        ));
        let report = closure_product_check(&z6, 2, &lim()).unwrap();
        assert!(report.pass, "{report}");
    }

    #[test]
    fn next_permutation_counts() {
        let mut v = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}
