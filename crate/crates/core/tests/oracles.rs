//! Independent oracles: naive element closure, direct tuple orbits, exhaustive
//! base search and filtering of Sym(n), compared with the library.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use kclosure::closure::orbit_sets;
use kclosure::{
    capital_n, invariant_factors, k_closure, n_of, pgroup_witness, tuple_orbits, AbelianSpec, Limits, PermGroup,
    Permutation,
};
use proptest::prelude::*;

type Img = Vec<usize>;

fn compose(a: &[usize], b: &[usize]) -> Img {
    a.iter().map(|&p| b[p]).collect()
}

/// All products of generators, by breadth-first search on image vectors.
fn naive_elements(degree: usize, gens: &[Img]) -> BTreeSet<Img> {
    let id: Img = (0..degree).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn all_perms(degree: usize) -> Vec<Img> {
    fn rec(cur: &mut Img, used: &mut [bool], out: &mut Vec<Img>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for p in 0..used.len() {
            if !used[p] {
                used[p] = true;
                cur.push(p);
                rec(cur, used, out);
                cur.pop();
                used[p] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; degree], &mut out);
    out
}

fn all_tuples(degree: usize, k: usize) -> Vec<Img> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..degree).map(move |p| {
                    let mut t = t.clone();
                    t.push(p);
                    t
                })
            })
            .collect();
    }
    out
}

/// Orbit of every k-tuple under the element set, as a canonical map.
fn naive_tuple_orbits(degree: usize, k: usize, elements: &BTreeSet<Img>) -> BTreeMap<Img, Img> {
    let mut rep = BTreeMap::new();
    for t in all_tuples(degree, k) {
        let least = elements
            .iter()
            .map(|g| t.iter().map(|&p| g[p]).collect::<Img>())
            .min()
            .unwrap();
        rep.insert(t, least);
    }
    rep
}

fn naive_closure(degree: usize, k: usize, elements: &BTreeSet<Img>) -> BTreeSet<Img> {
    let orbits = naive_tuple_orbits(degree, k, elements);
    all_perms(degree)
        .into_iter()
        .filter(|x| {
            orbits
                .iter()
                .all(|(t, r)| orbits[&t.iter().map(|&p| x[p]).collect::<Img>()] == *r)
        })
        .collect()
}

fn naive_min_base(degree: usize, elements: &BTreeSet<Img>) -> usize {
    for size in 0..=degree {
        let found = all_tuples(degree, size).iter().any(|b| {
            elements
                .iter()
                .filter(|g| b.iter().all(|&p| g[p] == p))
                .count()
                == 1
        });
        if found {
            return size;
        }
    }
    unreachable!()
}

fn images(group: &PermGroup) -> Vec<Img> {
    group.generators().iter().map(|g| g.images().to_vec()).collect()
}

fn lib_elements(group: &PermGroup) -> BTreeSet<Img> {
    group
        .elements(1 << 20)
        .unwrap()
        .into_iter()
        .map(|g| g.images().to_vec())
        .collect()
}

fn sample_groups() -> Vec<PermGroup> {
    let g = |d: usize, gens: &[&str]| PermGroup::from_cycles(d, gens).unwrap();
    vec![
        g(5, &["(1,2,3)", "(1,2)(4,5)"]),
        g(3, &["(1,2,3)", "(1,2)"]),
        g(4, &["(1,2)(3,4)"]),
        g(4, &["(1,2,3,4)", "(1,3)"]),
        g(5, &["(1,2,3)(4,5)"]),
        g(6, &["(1,2)(3,4)", "(1,2)(5,6)"]),
        g(6, &["(1,2,3)", "(4,5,6)"]),
        g(6, &["(1,2,3,4,5,6)", "(1,6)(2,5)(3,4)"]),
        g(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]),
        g(6, &["(1,2)", "(3,4,5,6)"]),
        PermGroup::trivial(3),
    ]
}

#[test]
fn order_and_membership_match_naive_closure() {
    for group in sample_groups() {
        let naive = naive_elements(group.degree(), &images(&group));
        assert_eq!(group.order(), naive.len() as u128, "{:?}", group.generators());
        assert_eq!(lib_elements(&group), naive);
        for x in all_perms(group.degree()) {
            let p = Permutation::from_images(x.clone()).unwrap();
            assert_eq!(group.has(&p), naive.contains(&x));
        }
    }
}

#[test]
fn orbit_stabilizer() {
    for group in sample_groups() {
        for point in 0..group.degree() {
            let orbit = group.orbits().block_of(point).len() as u128;
            let stab = group.point_stabilizer(point).unwrap();
            assert_eq!(orbit * stab.order(), group.order());
            let naive: HashSet<Img> = lib_elements(&group)
                .into_iter()
                .filter(|g| g[point] == point)
                .collect();
            assert_eq!(stab.order(), naive.len() as u128);
        }
    }
}

#[test]
fn minimal_base_matches_exhaustive_search() {
    for group in sample_groups() {
        let naive = naive_min_base(group.degree(), &lib_elements(&group));
        assert_eq!(group.minimal_base_size(), naive, "{:?}", group.generators());
        let base = group.minimal_base();
        assert_eq!(base.len(), naive);
        assert!(group.is_base(&base).unwrap());
    }
}

#[test]
fn tuple_orbits_match_direct_orbits() {
    for group in sample_groups() {
        let elements = lib_elements(&group);
        for k in 1..=3 {
            let index = tuple_orbits(&group, k, 1 << 20).unwrap();
            let naive = naive_tuple_orbits(group.degree(), k, &elements);
            let classes: BTreeSet<&Img> = naive.values().collect();
            assert_eq!(index.orbit_count(), classes.len());
            for (t, r) in &naive {
                assert_eq!(index.label(t), index.label(r));
            }
        }
    }
}

#[test]
fn closures_match_independent_filter() {
    for group in sample_groups() {
        let elements = lib_elements(&group);
        for k in 1..=3 {
            let c = k_closure(&group, k, &Limits::default()).unwrap();
            let naive = naive_closure(group.degree(), k, &elements);
            assert_eq!(lib_elements(&c), naive, "{:?} k={k}", group.generators());
        }
    }
}

#[test]
fn known_closure_orders() {
    let lim = Limits::default();
    let g = PermGroup::from_cycles(5, &["(1,2,3)", "(1,2)(4,5)"]).unwrap();
    assert_eq!(k_closure(&g, 2, &lim).unwrap().order(), 12);
    assert_eq!(k_closure(&g, 1, &lim).unwrap().order(), 12);
    assert_eq!(k_closure(&g, 3, &lim).unwrap().order(), 6);
    let v = PermGroup::from_cycles(4, &["(1,2)(3,4)"]).unwrap();
    assert_eq!(k_closure(&v, 2, &lim).unwrap().order(), 2);
    let c4 = PermGroup::from_cycles(4, &["(1,2,3,4)"]).unwrap();
    assert_eq!(k_closure(&c4, 2, &lim).unwrap().order(), 4);
}

#[test]
fn abelian_invariants() {
    let cases: [(&[u64], &[u128], usize, usize); 5] = [
        (&[2, 4, 3], &[2, 12], 2, 3),
        (&[6, 10], &[2, 30], 2, 4),
        (&[4, 6], &[2, 12], 2, 3),
        (&[2, 2, 2], &[2, 2, 2], 3, 3),
        (&[9, 3], &[3, 9], 2, 2),
    ];
    for (orders, inv, n, big_n) in cases {
        let s = AbelianSpec::new(orders.iter().copied()).unwrap();
        assert_eq!(invariant_factors(&s).0, inv, "{orders:?}");
        assert_eq!(n_of(&s), n);
        assert_eq!(capital_n(&s), big_n);
    }
}

#[test]
fn witness_invariants() {
    for (d, p) in [(&[2u64][..], 2), (&[2, 2], 2), (&[3, 9], 3), (&[2, 2, 4], 2), (&[5, 5], 5)] {
        let w = pgroup_witness(d, p).unwrap();
        let n = d.len();
        assert_eq!(w.n(), n);
        assert_eq!(w.degree(), d[0] as usize + d.iter().sum::<u64>() as usize);
        assert!(w.group.is_abelian());
        assert_eq!(w.group.order(), d.iter().map(|&x| x as u128).product::<u128>());
        assert!(!w.group.has(&w.tau0));
        assert!(kclosure::in_k_closure(&w.group, &w.tau0, n, &Limits::default()).unwrap());
        let orbits: BTreeSet<Vec<usize>> = orbit_sets(&w.group);
        assert_eq!(orbits.len(), n + 1);
        assert_eq!(w.deltas.len(), n + 1);
        for delta in &w.deltas {
            assert!(orbits.contains(&delta.iter().copied().collect::<Vec<_>>()));
        }
    }
}

fn perm_strategy(degree: usize) -> impl Strategy<Value = Img> {
    Just((0..degree).collect::<Img>()).prop_shuffle()
}

fn group_strategy() -> impl Strategy<Value = (usize, Vec<Img>)> {
    (2usize..=6).prop_flat_map(|d| (Just(d), prop::collection::vec(perm_strategy(d), 1..=3)))
}

fn to_group(degree: usize, gens: &[Img]) -> PermGroup {
    let gens = gens
        .iter()
        .map(|g| Permutation::from_images(g.clone()).unwrap())
        .collect();
    PermGroup::new(degree, gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(x in (1usize..=12).prop_flat_map(perm_strategy)) {
        let p = Permutation::from_images(x.clone()).unwrap();
        let text = p.to_string();
        let back = Permutation::parse(&text, x.len()).unwrap();
        prop_assert_eq!(back.images(), &x[..]);
    }

    #[test]
    fn composition_laws(
        (a, b, c) in (1usize..=9).prop_flat_map(|d| (perm_strategy(d), perm_strategy(d), perm_strategy(d)))
    ) {
        let [a, b, c] = [a, b, c].map(|v| Permutation::from_images(v).unwrap());
        let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
        let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        let ab = a.compose(&b).unwrap();
        prop_assert!(ab.support().is_subset(&a.support().union(&b.support()).copied().collect()));
        for p in 0..a.degree() {
            prop_assert_eq!(ab.image(p), b.image(a.image(p)));
        }
    }

    #[test]
    fn cycle_decomposition(x in (1usize..=10).prop_flat_map(perm_strategy)) {
        let p = Permutation::from_images(x).unwrap();
        let cycles = p.cycles();
        prop_assert!(kclosure::are_independent(&cycles));
        let rebuilt = Permutation::from_cycles(&cycles, p.degree()).unwrap();
        prop_assert_eq!(&rebuilt, &p);
        let lcm = cycles.iter().fold(1u64, |acc, c| {
            let l = c.len() as u64;
            let (mut a, mut b) = (acc, l);
            while b != 0 { (a, b) = (b, a % b); }
            acc / a * l
        });
        prop_assert_eq!(p.order(), lcm);
    }

    #[test]
    fn invariant_factor_properties(orders in prop::collection::vec(1u64..=30, 0..4), perm in any::<prop::sample::Index>()) {
        let s = AbelianSpec::new(orders.clone()).unwrap();
        let inv = invariant_factors(&s).0;
        prop_assert!(inv.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert_eq!(inv.iter().product::<u128>(), s.order().unwrap());
        let again = AbelianSpec::new(inv.iter().map(|&d| d as u64)).unwrap();
        prop_assert_eq!(&invariant_factors(&again).0, &inv);
        prop_assert_eq!(n_of(&s), inv.len());
        prop_assert!(n_of(&s) <= capital_n(&s));
        let mut shuffled = orders.clone();
        if !shuffled.is_empty() {
            let i = perm.index(shuffled.len());
            shuffled.rotate_left(i);
        }
        let t = AbelianSpec::new(shuffled).unwrap();
        prop_assert_eq!(invariant_factors(&t).0, inv);
    }

    #[test]
    fn backtracking_matches_filter((degree, gens) in group_strategy(), k in 1usize..=3) {
        let group = to_group(degree, &gens);
        let elements = naive_elements(degree, &gens);
        let c = k_closure(&group, k, &Limits::default()).unwrap();
        prop_assert_eq!(lib_elements(&c), naive_closure(degree, k, &elements));
    }

    #[test]
    fn closure_structure((degree, gens) in group_strategy(), k in 1usize..=3) {
        let group = to_group(degree, &gens);
        let lim = Limits::default();
        let c = k_closure(&group, k, &lim).unwrap();
        prop_assert!(group.is_subgroup_of(&c));
        prop_assert!(k_closure(&c, k, &lim).unwrap().same_group(&c));
        prop_assert_eq!(orbit_sets(&c), orbit_sets(&group));
        if k >= 2 {
            prop_assert!(c.is_subgroup_of(&k_closure(&group, k - 1, &lim).unwrap()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn abelian_closures(orders in prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 6]), 1..=2), k in 2usize..=3) {
        let group = kclosure::disjoint_cyclic_rep(&orders).unwrap();
        let lim = Limits::default();
        let c = k_closure(&group, k, &lim).unwrap();
        prop_assert!(c.is_abelian());
        let prime_power = |o: u128| kclosure::abelian::factorize(o as u64).len() <= 1;
        for (p, sylow) in kclosure::abelian_sylow_subgroups(&group).unwrap() {
            let sc = k_closure(&sylow, k, &lim).unwrap();
            prop_assert!(prime_power(sc.order()));
            prop_assert_eq!(sc.order() % p as u128, 0);
            prop_assert_eq!(orbit_sets(&sc), orbit_sets(&sylow));
        }
    }
}
