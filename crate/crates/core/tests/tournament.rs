use dice_core::samplers::{DiceSource, RngStream};
use dice_core::tournament::{
    build_tournament, path2_identity_check, pattern_frequencies, triple_census,
    triple_census_brute, Tournament,
};
use dice_core::Model;
use rand::Rng;

fn random_tournament(m: usize, stream: u64) -> Tournament {
    let mut rng = RngStream::new(77, stream).rng();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            edges.push(if rng.random::<bool>() { (i, j) } else { (j, i) });
        }
    }
    Tournament::from_edges(m, edges).unwrap()
}

#[test]
fn path_identity_on_random_tournaments() {
    for t in 0..100u64 {
        let m = 3 + (t as usize * 7) % 62;
        let tour = random_tournament(m, t);
        let r = path2_identity_check(&tour);
        assert!(r.tie_free);
        assert!(r.degree_identity, "m = {m}: {r:?}");
        assert_eq!(r.triangle_identity, Some(true), "m = {m}: {r:?}");
        assert_eq!(triple_census(&tour), triple_census_brute(&tour));
    }
}

#[test]
fn census_with_ties_matches_brute_force() {
    for (n, model) in [
        (6usize, Model::BalancedSequence),
        (8, Model::MultisetCanonical),
        (20, Model::BalancedSequence),
    ] {
        let dice = DiceSource::default_for(model)
            .sample_many(n, 45, RngStream::new(5, n as u64))
            .unwrap();
        let tour = build_tournament(&dice).unwrap();
        assert!(!tour.tie_pairs().is_empty() || n == 20);
        let fast = triple_census(&tour);
        assert_eq!(fast, triple_census_brute(&tour), "n = {n}");
        assert_eq!(fast.total, 45 * 44 * 43 / 6);
        let r = path2_identity_check(&tour);
        assert!(r.degree_identity);
        let k3 = pattern_frequencies(&tour, 3).unwrap();
        assert_eq!(k3.subsets, fast.complete());
        let cyclic: u64 = k3
            .classes
            .iter()
            .filter(|c| c.label == "cyclic")
            .map(|c| c.count)
            .sum();
        assert_eq!(cyclic, fast.intransitive);
    }
}
