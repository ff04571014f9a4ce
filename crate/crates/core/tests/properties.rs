use opgame_core::expr::{expr_to_game, game_to_exprs};
use opgame_core::fixpoint::winner_of;
use opgame_core::format::{game_from_json, game_to_json, parse_pgsolver, write_pgsolver};
use opgame_core::game::{close, compose, empty, identity, swap, tensor};
use opgame_core::iso::is_isomorphic;
use opgame_core::oracle::random::rng;
use opgame_core::oracle::{random_closed_game, random_game, zielonka, ClosingContext, RandomGameParams};
use opgame_core::{normalize, normalize_game, Boundary, ExprSystem, Guards, NormalForm, OpenParityGame, Var};
use proptest::prelude::*;

fn game(nodes: usize, entries: usize, exits: usize, seed: u64) -> OpenParityGame {
    random_game(&RandomGameParams {
        nodes,
        entries,
        exits,
        max_priority: 5,
        density: 0.3,
        acyclic: false,
        seed,
    })
    .unwrap()
}

fn nfs(g: &OpenParityGame) -> Vec<NormalForm> {
    normalize_game(g, &Guards::default()).unwrap().entries
}

/// Renames exit `xk` to `x(k + by)`, from the top down so nothing collides.
fn shift_exits(nf: &NormalForm, exits: usize, by: usize) -> NormalForm {
    (1..=exits).rev().fold(nf.clone(), |f, k| {
        f.substitute(&Var::exit(k), &NormalForm::var(Var::exit(k + by)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_is_a_unit_for_compose(n in 1usize..7, e in 0usize..3, x in 0usize..3, seed: u64) {
        let a = game(n, e, x, seed);
        prop_assert!(is_isomorphic(&compose(&identity(a.domain()), &a).unwrap(), &a));
        prop_assert!(is_isomorphic(&compose(&a, &identity(a.codomain())).unwrap(), &a));
    }

    #[test]
    fn empty_is_a_unit_for_tensor(n in 1usize..7, e in 0usize..3, x in 0usize..3, seed: u64) {
        let a = game(n, e, x, seed);
        prop_assert!(is_isomorphic(&tensor(&a, &empty()), &a));
        prop_assert!(is_isomorphic(&tensor(&empty(), &a), &a));
    }

    #[test]
    fn swap_is_an_involution(a in 0usize..3, b in 0usize..3, c in 0usize..3, d in 0usize..3) {
        let (l, r) = (Boundary::new(a, b), Boundary::new(c, d));
        let twice = compose(&swap(l, r), &swap(r, l)).unwrap();
        prop_assert!(is_isomorphic(&twice, &identity(l + r)));
    }

    #[test]
    fn compose_is_associative(sizes in (1usize..5, 1usize..5, 1usize..5), wires in (0usize..3, 0usize..3, 0usize..3), seed: u64) {
        let a = game(sizes.0, 1, wires.0, seed);
        let b = game(sizes.1, wires.0, wires.1, seed ^ 1);
        let c = game(sizes.2, wires.1, wires.2, seed ^ 2);
        let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert!(is_isomorphic(&left, &right));
    }

    #[test]
    fn json_round_trip(n in 1usize..8, e in 0usize..3, x in 0usize..3, seed: u64) {
        let a = game(n, e, x, seed);
        prop_assert_eq!(game_from_json(&game_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn pgsolver_round_trip(n in 1usize..10, m in 2u32..7, seed: u64) {
        let g = random_closed_game(n, m, 0.3, seed).unwrap();
        let back = parse_pgsolver(&write_pgsolver(&g), m).unwrap();
        prop_assert!(is_isomorphic(back.game(), g.game()));
        prop_assert_eq!(zielonka(&back), zielonka(&g));
    }

    #[test]
    fn tensor_juxtaposes_normal_forms(n in (1usize..5, 1usize..5), e in (0usize..3, 0usize..3), x in (0usize..3, 0usize..3), seed: u64) {
        let a = game(n.0, e.0, x.0, seed);
        let b = game(n.1, e.1, x.1, seed ^ 7);
        let mut expected = nfs(&a);
        expected.extend(nfs(&b).iter().map(|f| shift_exits(f, x.1, x.0)));
        prop_assert_eq!(nfs(&tensor(&a, &b)), expected);
    }

    #[test]
    fn closing_contexts_are_predicted_by_normal_forms(n in 1usize..7, e in 1usize..3, x in 0usize..3, seed: u64) {
        let a = game(n, e, x, seed);
        let entries = nfs(&a);
        let mut r = rng(seed);
        for _ in 0..5 {
            let ctx = ClosingContext::random(&mut r, e, x, 5);
            let closed = ctx.close(&a).unwrap();
            prop_assert_eq!(ctx.predict(&entries, &Guards::default()).unwrap(), zielonka(&closed));
        }
    }

    #[test]
    fn translation_to_terms_preserves_normal_forms(n in 1usize..6, e in 1usize..3, x in 0usize..3, seed: u64) {
        let guards = Guards::default();
        let a = game(n, e, x, seed);
        let system = game_to_exprs(&a, &guards).unwrap();
        let by_term: Vec<NormalForm> = system.components().iter().map(|t| normalize(t, &guards).unwrap().0).collect();
        prop_assert_eq!(&by_term, &nfs(&a));
        let vars = (1..=x).map(Var::exit).collect();
        let rebuilt = expr_to_game(&ExprSystem::new(vars, system.components().to_vec()).unwrap());
        prop_assert_eq!(nfs(&rebuilt), by_term);
    }
}

/// Plugging exits with a closed environment: solving the whole agrees with
/// substituting the environment's normal forms into the game's.
#[test]
fn closing_with_an_environment() {
    for seed in 0..100u64 {
        let exits = (seed % 3) as usize;
        let a = game(1 + (seed % 6) as usize, 2, exits, seed);
        let env = game(1 + (seed % 4) as usize, exits, 0, seed + 1000);
        let closed = close(&a, &env).unwrap();
        let plugs = nfs(&env);
        let predicted: Vec<_> = nfs(&a)
            .iter()
            .map(|f| {
                let f = plugs.iter().enumerate().fold(f.clone(), |f, (k, p)| f.substitute(&Var::exit(k + 1), p));
                winner_of(&f).unwrap()
            })
            .collect();
        assert_eq!(predicted, zielonka(&closed), "seed {seed}");
    }
}
