use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qbc::adversary::{count_errors, simulate_eve_attack, simulate_eve_run};
use qbc::cipher::{encode_text, attack_key_theta, KeySchedule, DUMAS_MESSAGE};
use qbc::parallel::{map_runs, map_runs_sequential};
use qbc::seed::SeedStream;
use rand::Rng;

fn eve_runs(c: &mut Criterion) {
    let (t1, t2) = attack_key_theta();
    let schedule = KeySchedule::sum_of_previous(2, t1, t2).unwrap();
    let msg = encode_text(DUMAS_MESSAGE).unwrap();
    let seeds = SeedStream::new(0, "bench");
    let run = |j: usize| {
        let mut rng = seeds.rng(j as u64);
        let draw = rng.random_range(0..64);
        count_errors(&msg, &simulate_eve_run(&msg, &schedule, draw, &mut rng).unwrap().history)
    };

    let mut group = c.benchmark_group("eve_runs");
    group.sample_size(20);
    for runs in [64usize, 256] {
        group.bench_with_input(BenchmarkId::new("parallel", runs), &runs, |b, &n| b.iter(|| map_runs(n, run)));
        group.bench_with_input(BenchmarkId::new("sequential", runs), &runs, |b, &n| {
            b.iter(|| map_runs_sequential(n, run))
        });
    }
    group.finish();
}

fn attack_pool_sizes(c: &mut Criterion) {
    let (t1, t2) = attack_key_theta();
    let schedule = KeySchedule::table(t1, t2).unwrap();
    let msg = encode_text(DUMAS_MESSAGE).unwrap();
    let seeds = SeedStream::new(0, "bench");
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();

    let mut group = c.benchmark_group("attack_256");
    group.sample_size(20);
    group.bench_function("default_pool", |b| {
        b.iter(|| simulate_eve_attack(&msg, &schedule, 256, &seeds).unwrap())
    });
    group.bench_function("one_thread", |b| {
        b.iter(|| single.install(|| simulate_eve_attack(&msg, &schedule, 256, &seeds).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, eve_runs, attack_pool_sizes);
criterion_main!(benches);
