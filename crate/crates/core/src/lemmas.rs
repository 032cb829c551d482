//! Property checks on abelian permutation groups: restriction of setwise
//! stabilizers of Sylow orbits, and orbit sizes and kernels of Hall
//! subgroups on transitive constituents.

use std::collections::BTreeSet;

use rand::Rng;

use crate::abelian::pi_part;
use crate::closure::abelian_sylow_subgroups;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::report::Check;

/// Outcome of one property over many instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    pub passed: usize,
    pub total: usize,
    pub first_failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            passed: 0,
            total: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(describe());
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }

    pub fn into_check(self, description: String) -> Check {
        let observed = match &self.first_failure {
            None => format!("{}/{}", self.passed, self.total),
            Some(f) => format!("{}/{} (first failure: {f})", self.passed, self.total),
        };
        Check {
            description,
            expected: format!("{}/{}", self.total, self.total),
            pass: self.ok(),
            observed,
        }
    }
}

fn union(blocks: &[BTreeSet<usize>]) -> BTreeSet<usize> {
    blocks.iter().flatten().copied().collect()
}

/// For each prime `p`, Sylow `P` and chosen list of `P`-orbits with union
/// `D`: the elements of `G` fixing each orbit setwise induce on `D` exactly
/// the group `P` induces there. When a prime has more than `max_subsets`
/// nonempty orbit subsets, `max_subsets` of them are sampled with `rng`.
pub fn setwise_stabilizer_property<R: Rng>(
    group: &PermGroup,
    max_subsets: usize,
    element_cap: usize,
    rng: &mut R,
) -> Result<Tally> {
    let mut tally = Tally::new();
    for (p, sylow) in abelian_sylow_subgroups(group)? {
        let orbits = sylow.orbits().block_sets();
        for subset in orbit_subsets(orbits.len(), max_subsets, rng) {
            let blocks: Vec<BTreeSet<usize>> = subset.iter().map(|&i| orbits[i].clone()).collect();
            let delta = union(&blocks);
            let l = group.setwise_stabilizer_of_blocks(&blocks, element_cap)?;
            let lhs = l.restriction(&delta)?.elements(element_cap)?;
            let rhs = sylow.restriction(&delta)?.elements(element_cap)?;
            tally.record(lhs == rhs, || {
                format!("p={p}, orbits {subset:?}: |L^D|={} vs |P^D|={}", lhs.len(), rhs.len())
            });
        }
    }
    Ok(tally)
}

/// Nonempty subsets of `0..count`, all of them when there are at most
/// `max` (ordered by bitmask), otherwise `max` distinct random ones.
fn orbit_subsets<R: Rng>(count: usize, max: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let decode = |mask: u64| (0..count).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>();
    let total = if count >= 64 { u64::MAX } else { (1u64 << count) - 1 };
    if total <= max as u64 {
        return (1..=total).map(decode).collect();
    }
    let mut chosen = BTreeSet::new();
    while chosen.len() < max {
        let mask = if count >= 64 {
            rng.gen::<u64>()
        } else {
            rng.gen_range(1..=total)
        };
        if mask != 0 {
            chosen.insert(mask);
        }
    }
    chosen.into_iter().map(decode).collect()
}

/// For each transitive constituent `C` of degree `m` and each set `pi` of
/// primes dividing `|C|`, with `H` the Hall `pi`-subgroup: every `H`-orbit
/// has size `m_pi`, `C` permutes the `H`-orbits, and the kernel of that
/// action is `H`. Returns tallies for orbit sizes and for kernels.
pub fn hall_orbit_property(group: &PermGroup, element_cap: usize) -> Result<(Tally, Tally)> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let mut sizes = Tally::new();
    let mut kernels = Tally::new();
    for orbit in group.orbits().block_sets() {
        let constituent = group.restriction(&orbit)?;
        let m = orbit.len() as u64;
        let primes = constituent.prime_divisors();
        for mask in 0u32..(1 << primes.len()) {
            let pi: Vec<u64> = primes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let hall = constituent.abelian_hall_subgroup(&pi)?;
            let h_orbits = hall.orbits().block_sets();
            let want = pi_part(m, &pi) as usize;
            let ok = h_orbits.iter().all(|o| o.len() == want);
            sizes.record(ok, || {
                format!("orbit {orbit:?}, pi={pi:?}: H-orbit sizes differ from {want}")
            });

            let permutes = constituent
                .generators()
                .iter()
                .all(|g| h_orbits.iter().all(|o| h_orbits.contains(&g.image_of_set(o))));
            let kernel = constituent.setwise_stabilizer_of_blocks(&h_orbits, element_cap)?;
            let same = permutes && kernel.elements(element_cap)? == hall.elements(element_cap)?;
            kernels.record(same, || {
                format!(
                    "orbit {orbit:?}, pi={pi:?}: kernel order {} vs |H|={}",
                    kernel.order(),
                    hall.order()
                )
            });
        }
    }
    Ok((sizes, kernels))
}
