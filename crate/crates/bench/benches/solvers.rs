use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use opgame_core::fixpoint::{normalize, normalize_game, solve_closed};
use opgame_core::expr::parse_expr;
use opgame_core::oracle::{brute_force_closed, random_closed_game, random_game, zielonka, RandomGameParams};
use opgame_core::Guards;

fn closed_games(c: &mut Criterion) {
    let guards = Guards::default();
    let mut group = c.benchmark_group("closed");
    for n in [4, 8, 12] {
        let games: Vec<_> = (0..20).map(|s| random_closed_game(n, 6, 0.3, s).unwrap()).collect();
        group.bench_with_input(BenchmarkId::new("equational", n), &games, |b, games| {
            b.iter(|| games.iter().map(|g| solve_closed(black_box(g), &guards).unwrap()).collect::<Vec<_>>())
        });
        group.bench_with_input(BenchmarkId::new("zielonka", n), &games, |b, games| {
            b.iter(|| games.iter().map(|g| zielonka(black_box(g))).collect::<Vec<_>>())
        });
        if n <= 8 {
            group.bench_with_input(BenchmarkId::new("brute_force", n), &games, |b, games| {
                b.iter(|| games.iter().map(|g| brute_force_closed(black_box(g))).collect::<Vec<_>>())
            });
        }
    }
    group.finish();
}

fn open_games(c: &mut Criterion) {
    let guards = Guards::default();
    let mut group = c.benchmark_group("open");
    for n in [4, 8] {
        let games: Vec<_> = (0..20)
            .map(|seed| {
                random_game(&RandomGameParams {
                    nodes: n,
                    exits: 2,
                    seed,
                    ..RandomGameParams::default()
                })
                .unwrap()
            })
            .collect();
        group.bench_with_input(BenchmarkId::new("normalize_game", n), &games, |b, games| {
            b.iter(|| games.iter().map(|g| normalize_game(black_box(g), &guards).unwrap()).collect::<Vec<_>>())
        });
    }
    group.finish();
}

fn worked_term(c: &mut Criterion) {
    let guards = Guards::default();
    let t = parse_expr("mu y4 . mu y1 . <4> <1> (y1 /\\ x1) \\/ mu y3 . <3> <2> (y4 /\\ <1> (y1 /\\ x1) /\\ y3)").unwrap();
    c.bench_function("normalize worked term", |b| b.iter(|| normalize(black_box(&t), &guards).unwrap()));
}

criterion_group!(benches, closed_games, open_games, worked_term);
criterion_main!(benches);
