//! Concrete permutation representations of abelian groups: regular and
//! disjoint-cyclic actions, the non-closure witnesses, and exhaustive
//! enumeration of faithful actions on a bounded number of points.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::abelian::{invariant_factors, is_prime, n_of, primary_decomposition, AbelianSpec};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{Cycle, Permutation};

/// Largest group order accepted by the action enumeration.
pub const MAX_ENUMERATION_ORDER: u128 = 256;
/// Largest point count accepted by the action enumeration.
pub const MAX_ENUMERATION_POINTS: usize = 20;
const MAX_SUBGROUPS: usize = 20_000;
const MAX_ACTIONS: usize = 200_000;
const MAX_WITNESS_DEGREE: u128 = 1 << 16;

/// Cyclic group `<(1,2,..,m)>` acting regularly on `m` points.
pub fn regular_rep(m: usize) -> Result<PermGroup> {
    if m == 0 {
        return Err(Error::invalid("regular representation needs m >= 1"));
    }
    if m == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let cycle = Cycle::new((0..m).collect())?;
    PermGroup::new(m, vec![cycle.to_permutation(m)?])
}

/// Regular action of `Z_{o_1} x .. x Z_{o_r}` on itself by translation.
/// Points are elements in mixed radix, first factor least significant.
pub fn abelian_regular_rep(orders: &[u64]) -> Result<PermGroup> {
    let table = ElementTable::new(orders)?;
    let gens = (0..orders.len())
        .map(|j| {
            let unit = table.unit(j);
            Permutation::from_images((0..table.size).map(|x| table.add(x, unit)).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(table.size.max(1), gens)
}

/// Direct product of cyclic groups, factor `i` cycling its own block.
pub fn disjoint_cyclic_rep(orders: &[u64]) -> Result<PermGroup> {
    if let Some(&bad) = orders.iter().find(|&&o| o < 2) {
        return Err(Error::invalid(format!("cyclic order {bad} below 2")));
    }
    let degree: u128 = orders.iter().map(|&o| o as u128).sum();
    if degree == 0 {
        return Err(Error::invalid("no cyclic factors"));
    }
    if degree > MAX_WITNESS_DEGREE {
        return Err(Error::cap("disjoint cyclic degree", degree, MAX_WITNESS_DEGREE));
    }
    let degree = degree as usize;
    let mut offset = 0;
    let mut gens = Vec::new();
    for &o in orders {
        let o = o as usize;
        gens.push(Cycle::new((offset..offset + o).collect())?.to_permutation(degree)?);
        offset += o;
    }
    PermGroup::new(degree, gens)
}

/// The p-group witness: `H = <tau_0 tau_1, tau_0^-1 tau_i (i >= 2)>` built
/// from independent cycles `tau_0, .., tau_n` with `|tau_0| = d_1` and
/// `|tau_i| = d_i`. `tau_0` lies in `H^(n)` but not in `H`.
#[derive(Clone, Debug)]
pub struct WitnessRep {
    pub group: PermGroup,
    pub tau0: Permutation,
    /// `tau_0, tau_1, .., tau_n`.
    pub cycles: Vec<Permutation>,
    /// Supports of `tau_0, .., tau_n`, in block order.
    pub deltas: Vec<BTreeSet<usize>>,
    pub factor_orders: Vec<u64>,
    pub prime: u64,
}

/// Serializable description sufficient to rebuild a witness exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDescriptor {
    pub factor_orders: Vec<u64>,
    pub prime: u64,
    pub degree: usize,
    pub generators: Vec<String>,
    pub tau0: String,
    /// 1-based point lists.
    pub deltas: Vec<Vec<usize>>,
}

impl WitnessRep {
    pub fn n(&self) -> usize {
        self.factor_orders.len()
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn descriptor(&self) -> WitnessDescriptor {
        WitnessDescriptor {
            factor_orders: self.factor_orders.clone(),
            prime: self.prime,
            degree: self.degree(),
            generators: self.group.generators().iter().map(|g| g.to_string()).collect(),
            tau0: self.tau0.to_string(),
            deltas: self
                .deltas
                .iter()
                .map(|d| d.iter().map(|p| p + 1).collect())
                .collect(),
        }
    }
}

fn is_power_of(mut d: u64, p: u64) -> bool {
    if d < 2 {
        return false;
    }
    while d.is_multiple_of(p) {
        d /= p;
    }
    d == 1
}

/// Builds the p-group witness for invariant factors `d` (all powers of `p`).
pub fn pgroup_witness(d: &[u64], p: u64) -> Result<WitnessRep> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if d.is_empty() {
        return Err(Error::invalid("need at least one invariant factor"));
    }
    for (i, &di) in d.iter().enumerate() {
        if !is_power_of(di, p) {
            return Err(Error::invalid(format!("factor {di} is not a nontrivial power of {p}")));
        }
        if i + 1 < d.len() && !d[i + 1].is_multiple_of(di) {
            return Err(Error::invalid(format!("factor {di} does not divide {}", d[i + 1])));
        }
    }
    let degree: u128 = d[0] as u128 + d.iter().map(|&x| x as u128).sum::<u128>();
    if degree > MAX_WITNESS_DEGREE {
        return Err(Error::cap("witness degree", degree, MAX_WITNESS_DEGREE));
    }
    let degree = degree as usize;
    let lengths: Vec<usize> = std::iter::once(d[0]).chain(d.iter().copied()).map(|x| x as usize).collect();
    let mut offset = 0;
    let mut cycles = Vec::new();
    let mut deltas = Vec::new();
    for len in lengths {
        let block: Vec<usize> = (offset..offset + len).collect();
        cycles.push(Cycle::new(block.clone())?.to_permutation(degree)?);
        deltas.push(block.into_iter().collect::<BTreeSet<_>>());
        offset += len;
    }
    let tau0 = cycles[0].clone();
    let tau0_inv = tau0.inverse();
    let mut gens = vec![&tau0 * &cycles[1]];
    for tau in &cycles[2..] {
        gens.push(&tau0_inv * tau);
    }
    let group = PermGroup::new(degree, gens)?;

    let expected: u128 = d.iter().map(|&x| x as u128).product();
    if group.order() != expected || !group.is_abelian() || group.has(&tau0) {
        return Err(Error::invalid(format!(
            "witness construction for {d:?} failed its own post-conditions"
        )));
    }
    Ok(WitnessRep {
        group,
        tau0,
        cycles,
        deltas,
        factor_orders: d.to_vec(),
        prime: p,
    })
}

/// Faithful action of an arbitrary nontrivial abelian group that is not
/// `n(G)`-closed: the witness for a Sylow subgroup with the most invariant
/// factors, next to regular actions of the other Sylow subgroups.
#[derive(Clone, Debug)]
pub struct MixedWitness {
    pub group: PermGroup,
    /// The prime whose Sylow subgroup carries the witness.
    pub prime: u64,
    pub core: WitnessRep,
    /// `tau_0` extended by the identity to the whole domain.
    pub tau0: Permutation,
    /// `(prime, first point, block size)` for each regular block.
    pub regular_blocks: Vec<(u64, usize, usize)>,
}

pub fn mixed_witness(spec: &AbelianSpec) -> Result<MixedWitness> {
    if spec.is_trivial() {
        return Err(Error::invalid("the trivial group has no witness"));
    }
    let primary = primary_decomposition(spec);
    let n = n_of(spec);
    let (&q, q_parts) = primary
        .iter()
        .find(|(_, parts)| parts.len() == n)
        .expect("some prime attains n(G)");
    let core = pgroup_witness(q_parts, q)?;

    let mut degree = core.degree() as u128;
    let mut others = Vec::new();
    for (&p, parts) in &primary {
        if p == q {
            continue;
        }
        let size: u128 = parts.iter().map(|&x| x as u128).product();
        others.push((p, parts.clone(), size as usize));
        degree += size;
    }
    if degree > MAX_WITNESS_DEGREE {
        return Err(Error::cap("mixed witness degree", degree, MAX_WITNESS_DEGREE));
    }
    let degree = degree as usize;
    let mut gens = core
        .group
        .generators()
        .iter()
        .map(|g| g.embed(0, degree))
        .collect::<Result<Vec<_>>>()?;
    let mut offset = core.degree();
    let mut regular_blocks = Vec::new();
    for (p, parts, size) in others {
        let reg = abelian_regular_rep(&parts)?;
        for g in reg.generators() {
            gens.push(g.embed(offset, degree)?);
        }
        regular_blocks.push((p, offset, size));
        offset += size;
    }
    let tau0 = core.tau0.embed(0, degree)?;
    Ok(MixedWitness {
        group: PermGroup::new(degree, gens)?,
        prime: q,
        core,
        tau0,
        regular_blocks,
    })
}

/// Multiplication table of `Z_{o_1} x .. x Z_{o_r}` with elements encoded in
/// mixed radix, first factor least significant.
#[derive(Clone, Debug)]
struct ElementTable {
    orders: Vec<usize>,
    size: usize,
}

impl ElementTable {
    fn new(orders: &[u64]) -> Result<Self> {
        let size = orders
            .iter()
            .try_fold(1u128, |acc, &o| acc.checked_mul(o as u128))
            .unwrap_or(u128::MAX);
        if size > MAX_WITNESS_DEGREE {
            return Err(Error::cap("abelian element table", size, MAX_WITNESS_DEGREE));
        }
        Ok(ElementTable {
            orders: orders.iter().map(|&o| o as usize).collect(),
            size: size as usize,
        })
    }

    fn unit(&self, j: usize) -> usize {
        self.orders[..j].iter().product()
    }

    fn add(&self, mut a: usize, mut b: usize) -> usize {
        let mut out = 0;
        let mut place = 1;
        for &o in &self.orders {
            out += ((a % o + b % o) % o) * place;
            a /= o;
            b /= o;
            place *= o;
        }
        out
    }
}

/// Subgroups as bitsets over encoded elements.
type Bits = Vec<u64>;

fn bits_new(size: usize) -> Bits {
    vec![0; size.div_ceil(64)]
}

fn bits_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bits_has(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn bits_count(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn bits_and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn members(b: &Bits, size: usize) -> Vec<usize> {
    (0..size).filter(|&i| bits_has(b, i)).collect()
}

/// All subgroups of the table's group, by breadth-first joins of cyclic
/// subgroups, sorted by order then membership.
fn all_subgroups(table: &ElementTable) -> Result<Vec<Bits>> {
    let size = table.size;
    let mut seen: HashSet<Bits> = HashSet::new();
    let mut cyclic = Vec::new();
    for g in 0..size {
        let mut b = bits_new(size);
        let mut x = 0;
        loop {
            bits_set(&mut b, x);
            x = table.add(x, g);
            if x == 0 {
                break;
            }
        }
        if seen.insert(b.clone()) {
            cyclic.push(b);
        }
    }
    let mut all = cyclic.clone();
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for c in &cyclic {
                // In an abelian group the join A v C is the sumset A + C.
                let mut j = a.clone();
                let am = members(a, size);
                for y in members(c, size) {
                    for &x in &am {
                        bits_set(&mut j, table.add(x, y));
                    }
                }
                if seen.insert(j.clone()) {
                    if seen.len() > MAX_SUBGROUPS {
                        return Err(Error::cap("subgroup lattice", seen.len() as u128, MAX_SUBGROUPS as u128));
                    }
                    all.push(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| bits_count(a).cmp(&bits_count(b)).then_with(|| members(a, size).cmp(&members(b, size))));
    Ok(all)
}

/// A faithful action on the disjoint union of coset spaces `G/K_i`.
#[derive(Clone, Debug)]
pub struct FaithfulAction {
    pub group: PermGroup,
    /// Point stabilizers `K_i`, as orders, one per orbit.
    pub stabilizer_orders: Vec<u128>,
    /// Positions of the `K_i` in the sorted subgroup lattice.
    pub stabilizer_ids: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
}

impl FaithfulAction {
    pub fn label(&self) -> String {
        format!("orbits {:?} stabilizers {:?}", self.orbit_sizes, self.stabilizer_ids)
    }
}

/// Every faithful action of `spec` on at most `max_points` points, one per
/// multiset `{K_1, .., K_r}` of proper subgroups with trivial intersection
/// and `sum [G:K_i] <= max_points`. Actions with fixed points are not
/// emitted. Order follows the sorted subgroup lattice.
pub fn enumerate_faithful_actions(spec: &AbelianSpec, max_points: usize) -> Result<Vec<FaithfulAction>> {
    let order = spec.order().unwrap_or(u128::MAX);
    if order > MAX_ENUMERATION_ORDER {
        return Err(Error::cap("faithful action enumeration group order", order, MAX_ENUMERATION_ORDER));
    }
    if max_points > MAX_ENUMERATION_POINTS {
        return Err(Error::cap(
            "faithful action enumeration points",
            max_points as u128,
            MAX_ENUMERATION_POINTS as u128,
        ));
    }
    if spec.is_trivial() {
        return Ok(Vec::new());
    }
    let table = ElementTable::new(spec.orders())?;
    let size = table.size;
    let lattice: Vec<Bits> = all_subgroups(&table)?
        .into_iter()
        .filter(|b| bits_count(b) < size)
        .collect();
    let indices: Vec<usize> = lattice.iter().map(|b| size / bits_count(b)).collect();

    let mut choices: Vec<Vec<usize>> = Vec::new();
    let mut full = bits_new(size);
    for i in 0..size {
        bits_set(&mut full, i);
    }
    let mut stack = Vec::new();
    choose(&lattice, &indices, 0, max_points, &full, &mut stack, &mut choices)?;

    let mut actions = Vec::with_capacity(choices.len());
    for ids in choices {
        actions.push(coset_action(&table, &lattice, &ids)?);
    }
    Ok(actions)
}

fn choose(
    lattice: &[Bits],
    indices: &[usize],
    from: usize,
    budget: usize,
    meet: &Bits,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    for id in from..lattice.len() {
        if indices[id] > budget {
            continue;
        }
        let next = bits_and(meet, &lattice[id]);
        stack.push(id);
        if bits_count(&next) == 1 {
            out.push(stack.clone());
            if out.len() > MAX_ACTIONS {
                return Err(Error::cap("faithful action count", out.len() as u128, MAX_ACTIONS as u128));
            }
        }
        choose(lattice, indices, id, budget - indices[id], &next, stack, out)?;
        stack.pop();
    }
    Ok(())
}

fn coset_action(table: &ElementTable, lattice: &[Bits], ids: &[usize]) -> Result<FaithfulAction> {
    let size = table.size;
    let mut point_of: Vec<BTreeMap<usize, usize>> = Vec::new();
    let mut degree = 0;
    let mut orbit_sizes = Vec::new();
    // Cosets are labelled by their least element, blocks in `ids` order.
    for &id in ids {
        let k = members(&lattice[id], size);
        let mut reps = BTreeMap::new();
        for x in 0..size {
            let rep = k.iter().map(|&h| table.add(x, h)).min().unwrap();
            reps.entry(rep).or_insert(0);
        }
        let count = reps.len();
        for (i, v) in reps.values_mut().enumerate() {
            *v = degree + i;
        }
        degree += count;
        orbit_sizes.push(count);
        point_of.push(reps);
    }
    let mut gens = Vec::new();
    for j in 0..table.orders.len() {
        let unit = table.unit(j);
        let mut images = vec![0; degree];
        for (block, &id) in ids.iter().enumerate() {
            let k = members(&lattice[id], size);
            for (&rep, &point) in &point_of[block] {
                let moved = table.add(rep, unit);
                let rep2 = k.iter().map(|&h| table.add(moved, h)).min().unwrap();
                images[point] = point_of[block][&rep2];
            }
        }
        gens.push(Permutation::from_images(images)?);
    }
    Ok(FaithfulAction {
        group: PermGroup::new(degree, gens)?,
        stabilizer_orders: ids.iter().map(|&id| bits_count(&lattice[id]) as u128).collect(),
        stabilizer_ids: ids.to_vec(),
        orbit_sizes,
    })
}

/// Disjoint-cyclic representation on the prime-power factorization, whose
/// base size is `N(G)`.
pub fn primary_disjoint_rep(spec: &AbelianSpec) -> Result<PermGroup> {
    let parts: Vec<u64> = primary_decomposition(spec).into_values().flatten().collect();
    disjoint_cyclic_rep(&parts)
}

/// Invariant factors as `u64`, for witness construction.
pub fn invariant_factors_u64(spec: &AbelianSpec) -> Result<Vec<u64>> {
    invariant_factors(spec)
        .0
        .into_iter()
        .map(|d| u64::try_from(d).map_err(|_| Error::invalid("invariant factor exceeds u64")))
        .collect()
}
