//! Verification campaigns behind the command-line subcommands. Each returns
//! a [`VerificationReport`]; independent items run in parallel and are
//! reported in input order.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::abelian::{capital_n, invariant_factors, n_of, AbelianSpec};
use crate::closure::{
    closedness, closure_product_check, in_k_closure, k_closure, strict_containment_witness, Limits,
};
use crate::constructions::{enumerate_faithful_actions, mixed_witness, primary_disjoint_rep};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lemmas::{hall_orbit_property, setwise_stabilizer_property};
use crate::perm::Permutation;
use crate::report::{Check, VerificationReport};

fn cycle_strings(perms: &[Permutation]) -> Vec<String> {
    perms.iter().map(|g| g.to_string()).collect()
}

fn group_json(group: &PermGroup) -> Value {
    json!({
        "degree": group.degree(),
        "generators": cycle_strings(group.generators()),
    })
}

fn spec_json(spec: &AbelianSpec) -> Value {
    json!({
        "orders": spec.orders(),
        "invariant_factors": invariant_factors(spec).0.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "n": n_of(spec),
        "N": capital_n(spec),
    })
}

/// k-closure of a single group, with the generators of the closure and an
/// element outside `G` when the containment is strict.
pub fn cmd_closure(group: &PermGroup, k: usize, limits: &Limits) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut inputs = group_json(group);
    inputs["k"] = json!(k);
    let mut report = VerificationReport::new("closure", inputs);
    let closure = k_closure(group, k, limits)?;
    let witness = strict_containment_witness(group, &closure);
    report.set("group_order", group.order().to_string());
    report.set("closure_order", closure.order().to_string());
    report.set("closure_generators", cycle_strings(closure.generators()));
    report.set("closed", closure.order() == group.order());
    report.set("witness", witness.as_ref().map(|w| w.to_string()));

    report.check_eq("G <= G^(k)", true, group.is_subgroup_of(&closure));
    let preserved = closure
        .generators()
        .iter()
        .map(|g| in_k_closure(group, g, k, limits))
        .collect::<Result<Vec<_>>>()?;
    report.check_eq(
        "closure generators preserve every k-tuple orbit",
        true,
        preserved.iter().all(|&b| b),
    );
    report.check_eq("orbits of G^(k) equal orbits of G", true, closure.orbits() == group.orbits());
    if let Some(w) = &witness {
        report.check_eq("witness lies outside G", false, group.has(w));
    }
    Ok(report.finish(started))
}

/// Builds the non-closure witness for `spec` and confirms that it is
/// faithful and not `n(G)`-closed.
pub fn cmd_witness(spec: &AbelianSpec, limits: &Limits) -> Result<VerificationReport> {
    if spec.is_trivial() {
        return Err(Error::invalid("witness needs a nontrivial group"));
    }
    let started = Instant::now();
    let mut report = VerificationReport::new("witness", spec_json(spec));
    let n = n_of(spec);
    let witness = mixed_witness(spec)?;
    let group = &witness.group;
    report.set("prime", witness.prime);
    report.set("degree", group.degree());
    report.set("generators", cycle_strings(group.generators()));
    report.set("tau0", witness.tau0.to_string());
    report.set("core", serde_json::to_value(witness.core.descriptor()).expect("descriptor"));
    report.set(
        "regular_blocks",
        witness
            .regular_blocks
            .iter()
            .map(|(p, start, size)| json!({"prime": p, "first_point": start + 1, "size": size}))
            .collect::<Vec<_>>(),
    );
    let order = spec.order().expect("order fits u128");
    report.check_eq("|H| = |G| (faithful)", order, group.order());
    report.check_eq("H is abelian", true, group.is_abelian());
    report.check_eq("tau0 in H", false, group.has(&witness.tau0));
    report.check_eq(
        format!("tau0 in H^({n})"),
        true,
        in_k_closure(group, &witness.tau0, n, limits)?,
    );
    let closure = k_closure(group, n, limits)?;
    report.set("closure_order", closure.order().to_string());
    report.check(
        format!("|H^({n})| > |H|"),
        format!("> {order}"),
        closure.order(),
        closure.order() > order,
    );
    Ok(report.finish(started))
}

/// Upper half over every faithful action on at most `max_points` points,
/// and lower half on the witness.
pub fn cmd_verify_thm2(spec: &AbelianSpec, max_points: usize, limits: &Limits) -> Result<VerificationReport> {
    if spec.is_trivial() {
        return Err(Error::invalid("the statement needs |G| > 1"));
    }
    let started = Instant::now();
    let mut inputs = spec_json(spec);
    inputs["max_points"] = json!(max_points);
    let mut report = VerificationReport::new("verify-thm2", inputs);
    let n = n_of(spec);
    let actions = enumerate_faithful_actions(spec, max_points)?;
    report.set("action_count", actions.len());

    let verdicts = actions
        .par_iter()
        .map(|a| closedness(&a.group, n + 1, limits).map(|v| (a, v)))
        .collect::<Result<Vec<_>>>()?;
    let shortcut = verdicts.iter().filter(|(_, v)| v.via_shortcut).count();
    report.set("shortcut_count", shortcut);
    for (action, verdict) in &verdicts {
        let how = if verdict.via_shortcut { "base" } else { "search" };
        report.check(
            format!("{}: G^({}) = G", action.label(), n + 1),
            "closed",
            format!("{} ({how})", if verdict.closed { "closed" } else { "not closed" }),
            verdict.closed,
        );
    }

    let witness = mixed_witness(spec)?;
    let verdict = closedness(&witness.group, n, limits)?;
    report.set("witness_degree", witness.group.degree());
    report.set("witness_closure_order", verdict.closure_order.to_string());
    report.check(
        format!("witness on {} points: G^({n}) != G", witness.group.degree()),
        "not closed",
        if verdict.closed { "closed" } else { "not closed" },
        !verdict.closed,
    );
    Ok(report.finish(started))
}

/// Sylow product identity on one abelian group.
pub fn cmd_verify_product(group: &PermGroup, k: usize, limits: &Limits) -> Result<VerificationReport> {
    closure_product_check(group, k, limits)
}

/// Restriction and Hall-orbit properties over every enumerated action.
pub fn cmd_verify_lemmas(
    spec: &AbelianSpec,
    max_points: usize,
    seed: u64,
    max_subsets: usize,
    limits: &Limits,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut inputs = spec_json(spec);
    inputs["max_points"] = json!(max_points);
    inputs["seed"] = json!(seed);
    inputs["max_subsets"] = json!(max_subsets);
    let mut report = VerificationReport::new("verify-lemmas", inputs);
    let actions = enumerate_faithful_actions(spec, max_points)?;
    report.set("action_count", actions.len());

    let per_action = actions
        .par_iter()
        .enumerate()
        .map(|(i, a)| -> Result<Vec<Check>> {
            // One stream per action keeps sampling independent of scheduling.
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let setwise = setwise_stabilizer_property(&a.group, max_subsets, limits.element_cap, &mut rng)?;
            let (sizes, kernels) = hall_orbit_property(&a.group, limits.element_cap)?;
            Ok(vec![
                setwise.into_check(format!("{}: L^D = P^D", a.label())),
                sizes.into_check(format!("{}: H-orbit sizes = m_pi", a.label())),
                kernels.into_check(format!("{}: kernel on Orb(H) = H", a.label())),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    for checks in per_action {
        report.extend_checks(checks);
    }
    Ok(report.finish(started))
}

/// Quick regression over the small worked examples.
pub fn self_test(limits: &Limits) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new("self-test", json!({}));

    let g = PermGroup::from_cycles(5, &["(1,2,3)", "(1,2)(4,5)"])?;
    let c = k_closure(&g, 2, limits)?;
    let s3c2 = PermGroup::from_cycles(5, &["(1,2,3)", "(1,2)", "(4,5)"])?;
    report.check_eq("2-closure of <(1,2,3),(1,2)(4,5)> is S3 x C2", true, c.same_group(&s3c2));

    let s3 = PermGroup::from_cycles(3, &["(1,2,3)", "(1,2)"])?;
    report.check_eq("S3 natural is 2-closed", true, closedness(&s3, 2, limits)?.closed);

    let v = PermGroup::from_cycles(4, &["(1,2)(3,4)"])?;
    let c = k_closure(&v, 1, limits)?;
    let target = PermGroup::from_cycles(4, &["(1,2)", "(3,4)"])?;
    report.check_eq("1-closure of <(1,2)(3,4)> is <(1,2),(3,4)>", true, c.same_group(&target));

    let verdict = closedness(&g, 3, limits)?;
    report.check_eq(
        "<(1,2,3),(1,2)(4,5)> is 3-closed by the base shortcut",
        "closed (base)",
        format!("{} ({})", if verdict.closed { "closed" } else { "not closed" }, if verdict.via_shortcut { "base" } else { "search" }),
    );

    for orders in [[2u64, 2], [3, 3]] {
        let spec = AbelianSpec::new(orders)?;
        let w = mixed_witness(&spec)?;
        report.check_eq(
            format!("witness for {spec}: tau0 in H^(2) and not in H"),
            "true,false",
            format!(
                "{},{}",
                in_k_closure(&w.group, &w.tau0, 2, limits)?,
                w.group.has(&w.tau0)
            ),
        );
    }

    let spec = AbelianSpec::new([2, 4, 3])?;
    let rep = primary_disjoint_rep(&spec)?;
    report.check_eq("base size of disjoint [2,4,3] equals N(G)", capital_n(&spec), rep.minimal_base_size());
    Ok(report.finish(started))
}
