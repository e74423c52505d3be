#![allow(dead_code)]

use icr_core::model::{Instance, PreferenceRelation, StrictProfile};

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Every way to cut a ranked list into consecutive ties.
pub fn coarsenings(ranked: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if ranked.is_empty() {
        return vec![Vec::new()];
    }
    let cuts = ranked.len() - 1;
    (0..1u32 << cuts)
        .map(|mask| {
            let mut classes = vec![vec![ranked[0]]];
            for (i, &c) in ranked.iter().enumerate().skip(1) {
                if mask >> (i - 1) & 1 == 1 {
                    classes.push(vec![c]);
                } else {
                    classes.last_mut().unwrap().push(c);
                }
            }
            classes
        })
        .collect()
}

/// Calls `visit` on every tie-shaped market of the given size together with
/// every truth refining it, over every mutual acceptability pattern.
pub fn for_each_smti(n_men: usize, n_women: usize, mut visit: impl FnMut(&Instance, &StrictProfile)) {
    let slots = n_men * n_women;
    for pattern in 0u32..1 << slots {
        let accepts = |m: usize, w: usize| pattern >> (m * n_women + w) & 1 == 1;
        let men_lists: Vec<Vec<usize>> = (0..n_men).map(|m| (0..n_women).filter(|&w| accepts(m, w)).collect()).collect();
        let women_lists: Vec<Vec<usize>> = (0..n_women).map(|w| (0..n_men).filter(|&m| accepts(m, w)).collect()).collect();
        // Per agent: every (truth order, tie structure) choice.
        let choices: Vec<Vec<(Vec<usize>, PreferenceRelation)>> = men_lists
            .iter()
            .chain(&women_lists)
            .map(|list| {
                permutations(list)
                    .into_iter()
                    .flat_map(|order| {
                        coarsenings(&order)
                            .into_iter()
                            .map(move |classes| (order.clone(), PreferenceRelation::from_classes(classes)))
                    })
                    .collect()
            })
            .collect();
        let mut pick = vec![0usize; choices.len()];
        loop {
            let chosen: Vec<&(Vec<usize>, PreferenceRelation)> =
                pick.iter().zip(&choices).map(|(&i, c)| &c[i]).collect();
            let rels: Vec<PreferenceRelation> = chosen.iter().map(|c| c.1.clone()).collect();
            let orders: Vec<Vec<usize>> = chosen.iter().map(|c| c.0.clone()).collect();
            let instance = Instance::new(rels[..n_men].to_vec(), rels[n_men..].to_vec()).unwrap();
            let truth = StrictProfile::new(orders[..n_men].to_vec(), orders[n_men..].to_vec()).unwrap();
            visit(&instance, &truth);
            let mut k = 0;
            loop {
                if k == pick.len() {
                    break;
                }
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
            if k == pick.len() {
                break;
            }
        }
    }
}
