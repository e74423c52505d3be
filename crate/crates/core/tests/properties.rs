use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use icr_core::forge::{generate, orient_bounded_degree, random_bounded_graph, random_smpi, random_truth, Family, GenParams};
use icr_core::format::{parse_instance, parse_matching, parse_profile, parse_refined_instance, write_instance, write_matching, write_profile};
use icr_core::model::{linear_extensions, Comparison, Instance, InterviewSet, StrictProfile};
use icr_core::oracle::brute_force_vc;
use icr_core::pbp::classify_pbps;
use icr_core::refine::{apply_interviews, interview_cost, recognize_interview_compatible};
use icr_core::solver::{naive_cost, solve_icr_exact};
use icr_core::stability::{enumerate_stable_matchings, gale_shapley, is_stable, StabilityLevel};
use icr_core::vc::{min_vertex_cover, VcMode};
use icr_core::{AgentRef, Side};

fn market(family: Family, n_men: usize, n_women: usize, tie_cap: usize, seed: u64) -> (Instance, StrictProfile) {
    let params = GenParams { n_men, n_women, tie_cap, density: 0.8, ..GenParams::default() };
    generate(family, &params, seed).unwrap()
}

fn any_market() -> impl Strategy<Value = (Instance, StrictProfile, u64)> {
    (1usize..=4, 1usize..=4, 1usize..=3, any::<u64>(), any::<bool>()).prop_map(|(a, b, cap, seed, smpi)| {
        if smpi {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let inst = random_smpi(a, b, 0.8, 0.4, &mut rng);
            let truth = random_truth(&inst, &mut rng);
            (inst, truth, seed)
        } else {
            let (inst, truth) = market(Family::RandomSmti, a, b, cap, seed);
            (inst, truth, seed)
        }
    })
}

fn random_interviews(inst: &Instance, seed: u64) -> InterviewSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    inst.acceptable_pairs().into_iter().filter(|_| rng.gen_bool(0.5)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn comparisons_are_asymmetric((inst, _, _) in any_market()) {
        for agent in inst.agents() {
            let rel = inst.relation(agent);
            for &a in rel.acceptable() {
                for &b in rel.acceptable() {
                    if rel.compare(a, b) == Comparison::PrefersFirst {
                        prop_assert_eq!(rel.compare(b, a), Comparison::PrefersSecond);
                    }
                }
            }
        }
    }

    #[test]
    fn truth_is_a_linear_extension((inst, truth, _) in any_market()) {
        prop_assert!(truth.refines(&inst));
        for agent in inst.agents() {
            let ext = linear_extensions(&inst, agent, 1000);
            prop_assert!(ext.overflow || ext.orders.iter().any(|o| o.as_slice() == truth.list(agent)));
        }
    }

    #[test]
    fn interviews_round_trip((inst, truth, seed) in any_market()) {
        let t = random_interviews(&inst, seed);
        let refined = apply_interviews(&inst, &truth, &t).unwrap();
        prop_assert!(recognize_interview_compatible(&inst, &refined).unwrap().compatible);
        let (cost, recovered) = interview_cost(&inst, &refined).unwrap();
        prop_assert!(cost <= t.len());
        prop_assert_eq!(apply_interviews(&inst, &truth, &recovered).unwrap(), refined.clone());
        let touched = t.iter().all(|(m, w)| {
            let new_for = |a: AgentRef, c: usize| {
                refined.relation(a).edges().iter().any(|&(x, y)| (x == c || y == c) && !inst.relation(a).prefers(x, y))
            };
            new_for(AgentRef::man(m), w) || new_for(AgentRef::woman(w), m)
        });
        if touched {
            prop_assert_eq!(cost, t.len());
        }
    }

    #[test]
    fn tie_shaped_refinements_stay_transitive(a in 1usize..=4, b in 1usize..=4, cap in 1usize..=3, seed: u64) {
        let (inst, truth) = market(Family::RandomSmti, a, b, cap, seed);
        let refined = apply_interviews(&inst, &truth, &random_interviews(&inst, seed)).unwrap();
        for agent in refined.agents() {
            prop_assert!(refined.relation(agent).is_transitive());
        }
    }

    #[test]
    fn stability_levels_nest((inst, truth, seed) in any_market()) {
        let refined = apply_interviews(&inst, &truth, &random_interviews(&inst, seed)).unwrap();
        for mu in enumerate_stable_matchings(&truth, 8).unwrap() {
            let sup = is_stable(&refined, &mu, StabilityLevel::Super).unwrap();
            let strong = is_stable(&refined, &mu, StabilityLevel::Strong).unwrap();
            let weak = is_stable(&refined, &mu, StabilityLevel::Weak).unwrap();
            prop_assert!(!sup || strong);
            prop_assert!(!strong || weak);
            // Truth-stable matchings stay weakly stable in every coarsening.
            prop_assert!(weak);
        }
    }

    #[test]
    fn deferred_acceptance_outcomes_are_enumerated((_, truth, _) in any_market()) {
        let all = enumerate_stable_matchings(&truth, 8).unwrap();
        prop_assert!(all.contains(&gale_shapley(&truth, Side::Man)));
        prop_assert!(all.contains(&gale_shapley(&truth, Side::Woman)));
    }

    #[test]
    fn solver_witness_is_sound((inst, truth, seed) in any_market()) {
        let side = if seed % 2 == 0 { Side::Man } else { Side::Woman };
        let mu = gale_shapley(&truth, side);
        let sol = solve_icr_exact(&inst, &truth, &mu).unwrap();
        prop_assert!(sol.cost <= naive_cost(&inst));
        prop_assert!(is_stable(&sol.refined, &mu, StabilityLevel::Super).unwrap());
        let mandatory = classify_pbps(&inst, &truth, &mu).unwrap().mandatory_interviews(&mu);
        prop_assert!(mandatory.is_subset(&sol.interviews));
        prop_assert_eq!(sol.breakdown.total(), sol.cost);
    }

    #[test]
    fn cover_modes_agree(n in 0usize..=12, attempts in 0usize..40, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_bounded_graph(n, 4, attempts, &mut rng);
        let auto = min_vertex_cover(&g, VcMode::AutoStructured);
        let general = min_vertex_cover(&g, VcMode::ForceGeneral);
        let brute = brute_force_vc(&g, 20).unwrap();
        prop_assert_eq!(auto.len(), brute.len());
        prop_assert_eq!(&general, &brute);
        for (u, v) in g.edges() {
            prop_assert!(auto.contains(&u) || auto.contains(&v));
        }
    }

    #[test]
    fn orientation_respects_bounds(n in 1usize..=12, attempts in 0usize..40, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_bounded_graph(n, 3, attempts, &mut rng);
        let o = orient_bounded_degree(&g).unwrap();
        prop_assert!(o.orients(&g));
        for v in 0..n {
            prop_assert!(o.in_degree(v) <= 2 && o.out_degree(v) <= 2);
        }
    }

    #[test]
    fn text_formats_round_trip((inst, truth, seed) in any_market()) {
        let text = write_instance(&inst, None).unwrap();
        let back = parse_instance(&text).unwrap();
        prop_assert!(back.warnings.is_empty());
        prop_assert_eq!(&back.instance, &inst);
        let refined = apply_interviews(&inst, &truth, &random_interviews(&inst, seed)).unwrap();
        let text = write_instance(&refined, None).unwrap();
        prop_assert_eq!(parse_refined_instance(&text).unwrap(), refined);
        prop_assert_eq!(parse_profile(&write_profile(&truth)).unwrap(), truth.clone());
        let mu = gale_shapley(&truth, Side::Man);
        prop_assert_eq!(parse_matching(&write_matching(&mu), inst.n_men(), inst.n_women()).unwrap(), mu);
    }

    #[test]
    fn generated_truths_refine(family_ix in 0usize..4, n in 1usize..=6, cap in 1usize..=4, seed: u64) {
        let family = Family::ALL[family_ix];
        let params = match family {
            Family::Tiered => GenParams { tiers: vec![n], ..GenParams::square(n) },
            _ => GenParams { tie_cap: cap, density: 0.7, ..GenParams::square(n) },
        };
        let (inst, truth) = generate(family, &params, seed).unwrap();
        prop_assert!(truth.refines(&inst));
        prop_assert_eq!(generate(family, &params, seed).unwrap(), (inst, truth));
    }
}
