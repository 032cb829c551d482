//! Permutation groups given by generators.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::abelian::{factorize, pi_part};
use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on explicit element enumeration.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// A subgroup of `Sym(degree)` with a lazily built stabilizer chain.
///
/// The chain is built at most once behind a `OnceLock`, so a group can be
/// shared freely across threads.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

/// Partition of the points into orbits, blocks ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    degree: usize,
    orbit_id: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn orbit_of(&self, point: usize) -> usize {
        self.orbit_id[point]
    }

    pub fn block_of(&self, point: usize) -> &[usize] {
        &self.blocks[self.orbit_id[point]]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks as sets, convenient for setwise stabilizers.
    pub fn block_sets(&self) -> Vec<BTreeSet<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().copied().collect())
            .collect()
    }
}

/// On-disk group description: degree plus 1-based cycle-notation generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            position: e.column(),
            message: format!("group file: {e}"),
        })
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| Permutation::parse(g, self.degree))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.degree, gens)
    }

    pub fn from_group(group: &PermGroup) -> Self {
        GroupFile {
            degree: group.degree(),
            generators: group.generators().iter().map(|g| g.to_string()).collect(),
        }
    }
}

impl PermGroup {
    /// Group generated by `gens`, all of which must have degree `degree`.
    /// Identity generators are dropped.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::invalid("degree must be positive"));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut generators: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !generators.contains(&g) {
                generators.push(g);
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("positive degree")
    }

    /// Convenience constructor from cycle-notation strings.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|g| Permutation::parse(g, degree))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens)
    }

    /// Symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_images((0..degree).map(|i| (i + 1) % degree).collect()).unwrap());
            let mut t: Vec<usize> = (0..degree).collect();
            t.swap(0, 1);
            gens.push(Permutation::from_images(t).unwrap());
        }
        PermGroup::new(degree, gens).expect("positive degree")
    }

    pub(crate) fn from_chain(degree: usize, gens: Vec<Permutation>, chain: StabChain) -> Self {
        let group = PermGroup::new(degree, gens).expect("validated generators");
        let _ = group.chain.set(chain);
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.generators, &[]))
    }

    /// Chain whose base starts with `prefix`.
    pub fn chain_with_base(&self, prefix: &[usize]) -> StabChain {
        StabChain::new(self.degree, &self.generators, prefix)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// `|G|` as the product of the chain's orbit lengths.
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    fn check_degree(&self, x: &Permutation) -> Result<()> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: x.degree(),
            });
        }
        Ok(())
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// Membership by sifting through the chain.
    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        self.check_degree(x)?;
        Ok(self.chain().contains(x))
    }

    /// Membership for a permutation already known to have the right degree.
    pub fn has(&self, x: &Permutation) -> bool {
        x.degree() == self.degree && self.chain().contains(x)
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    /// Equality as subgroups of `Sym(degree)`.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && self.order() == other.order()
    }

    /// Group generated by `self` together with `extra`.
    pub fn join(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.then(b) == b.then(a))
        })
    }

    pub fn orbits(&self) -> OrbitPartition {
        let n = self.degree;
        let mut orbit_id = vec![usize::MAX; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if orbit_id[start] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block = vec![start];
            orbit_id[start] = id;
            let mut i = 0;
            while i < block.len() {
                let beta = block[i];
                for g in &self.generators {
                    let gamma = g.image(beta);
                    if orbit_id[gamma] == usize::MAX {
                        orbit_id[gamma] = id;
                        block.push(gamma);
                    }
                }
                i += 1;
            }
            block.sort_unstable();
            blocks.push(block);
        }
        OrbitPartition {
            degree: n,
            orbit_id,
            blocks,
        }
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// All elements, sorted by image vector, refusing groups above `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::cap("element enumeration", order, cap as u128));
        }
        let mut elems = self.chain().elements();
        elems.sort_unstable();
        Ok(elems)
    }

    /// Stabilizer of `point`, from the Schreier generators of a chain based
    /// at that point.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.check_point(point)?;
        self.pointwise_stabilizer(&[point])
    }

    /// Pointwise stabilizer of a tuple of points.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        for &p in points {
            self.check_point(p)?;
        }
        let chain = self.chain_with_base(points);
        let distinct = points.iter().collect::<BTreeSet<_>>().len();
        PermGroup::new(self.degree, chain.stabilizer_gens(distinct).to_vec())
    }

    /// True iff the pointwise stabilizer of `points` is trivial.
    pub fn is_base(&self, points: &[usize]) -> Result<bool> {
        for &p in points {
            self.check_point(p)?;
        }
        let chain = self.chain_with_base(points);
        let distinct = points.iter().collect::<BTreeSet<_>>().len();
        Ok(chain.stabilizer_gens(distinct).is_empty())
    }

    /// Elements fixing each block setwise, found by filtering `elements()`.
    pub fn setwise_stabilizer_of_blocks(
        &self,
        blocks: &[BTreeSet<usize>],
        cap: usize,
    ) -> Result<PermGroup> {
        for block in blocks {
            if let Some(&p) = block.iter().find(|&&p| p >= self.degree) {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
        }
        let elems = self.elements(cap)?;
        let mut chain = StabChain::new(self.degree, &[], &[]);
        let mut gens = Vec::new();
        for g in elems {
            let fixes_all = blocks.iter().all(|b| b.iter().all(|p| b.contains(&g.image(*p))));
            if fixes_all && chain.extend(&g) {
                gens.push(g);
            }
        }
        Ok(PermGroup::from_chain(self.degree, gens, chain))
    }

    /// Induced group on an invariant set, relabelled `0..|set|` in increasing
    /// order of the original labels.
    pub fn restriction(&self, set: &BTreeSet<usize>) -> Result<PermGroup> {
        if set.is_empty() {
            return Err(Error::invalid("restriction to an empty set"));
        }
        let points: Vec<usize> = set.iter().copied().collect();
        let mut relabel = vec![usize::MAX; self.degree];
        for (i, &p) in points.iter().enumerate() {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
            relabel[p] = i;
        }
        let mut gens = Vec::new();
        for g in &self.generators {
            let mut images = Vec::with_capacity(points.len());
            for &p in &points {
                let q = relabel[g.image(p)];
                if q == usize::MAX {
                    return Err(Error::NotInvariant);
                }
                images.push(q);
            }
            gens.push(Permutation::from_images(images)?);
        }
        PermGroup::new(points.len(), gens)
    }

    /// Exact minimum base size by iterative deepening over orbit
    /// representatives of successive point stabilizers.
    pub fn minimal_base_size(&self) -> usize {
        self.minimal_base().len()
    }

    /// A base of minimum length, in the order found.
    pub fn minimal_base(&self) -> Vec<usize> {
        if self.is_trivial() || self.order() == 1 {
            return Vec::new();
        }
        let mut search = BaseSearch {
            failed: HashMap::new(),
        };
        let upper = self.chain().depth();
        for budget in 1..=upper {
            let mut prefix = Vec::new();
            if search.dfs(self, &mut prefix, budget) {
                return prefix;
            }
        }
        // Unreachable: the chain's base is itself a base of length `upper`.
        self.chain().base()
    }

    /// Subgroup generated by the `pi`-parts of the generators. Equals the
    /// Hall `pi`-subgroup when the group is abelian.
    pub fn abelian_hall_subgroup(&self, primes: &[u64]) -> Result<PermGroup> {
        if !self.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let o = g.order();
                let m = o / pi_part(o, primes);
                g.pow(m as i64)
            })
            .collect();
        PermGroup::new(self.degree, gens)
    }

    /// Primes dividing the group order.
    pub fn prime_divisors(&self) -> Vec<u64> {
        let mut primes = BTreeSet::new();
        for g in &self.generators {
            for (p, _) in factorize(g.order()) {
                primes.insert(p);
            }
        }
        // Generator orders alone can miss primes in non-abelian groups.
        let order = self.order();
        let mut rest = order;
        for &p in &primes {
            while rest.is_multiple_of(p as u128) {
                rest /= p as u128;
            }
        }
        if rest > 1 {
            let mut q = 2u128;
            while q * q <= rest {
                while rest.is_multiple_of(q) {
                    primes.insert(q as u64);
                    rest /= q;
                }
                q += 1;
            }
            if rest > 1 {
                primes.insert(rest as u64);
            }
        }
        primes.into_iter().collect()
    }
}

struct BaseSearch {
    failed: HashMap<(Vec<usize>, usize), ()>,
}

impl BaseSearch {
    /// Extends `prefix` by at most `budget` points to a base of `group`,
    /// where `group` is the pointwise stabilizer of `prefix`.
    fn dfs(&mut self, group: &PermGroup, prefix: &mut Vec<usize>, budget: usize) -> bool {
        let order = group.order();
        if order == 1 {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let orbits = group.orbits();
        let longest = orbits.blocks().iter().map(|b| b.len()).max().unwrap_or(1) as u128;
        if longest.checked_pow(budget as u32).is_some_and(|bound| bound < order) {
            return false;
        }
        let mut key_points = prefix.clone();
        key_points.sort_unstable();
        let key = (key_points, budget);
        if self.failed.contains_key(&key) {
            return false;
        }
        // Points in one orbit give conjugate stabilizers, so one
        // representative per nontrivial orbit suffices.
        for block in orbits.blocks().iter().filter(|b| b.len() > 1) {
            let alpha = block[0];
            let stab = group.point_stabilizer(alpha).expect("point in range");
            prefix.push(alpha);
            if self.dfs(&stab, prefix, budget - 1) {
                return true;
            }
            prefix.pop();
        }
        self.failed.insert(key, ());
        false
    }
}
