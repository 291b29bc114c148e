use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use tightlab_bench::{circulant, cubic_system, fermat_cubic, ideal};
use tightlab_core::differentials::minor_list;
use tightlab_core::{frobenius_power, tc_certify_in, CharPContext, Ideal, MonomialOrder};

fn groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("groebner");
    g.bench_function("cubic_system_grevlex", |b| {
        b.iter(|| {
            let i = cubic_system();
            black_box(i.groebner().len())
        })
    });
    g.bench_function("cubic_system_lex", |b| {
        b.iter(|| {
            let i = cubic_system();
            black_box(i.groebner_in(&MonomialOrder::lex()).unwrap().len())
        })
    });
    g.finish();
}

fn bracket_powers(c: &mut Criterion) {
    let mut g = c.benchmark_group("bracket_power");
    for p in [5u32, 7, 13] {
        let r = fermat_cubic(p);
        g.bench_with_input(BenchmarkId::new("fermat_xy_q_eq_p", p), &p, |b, &p| {
            b.iter(|| {
                let i = ideal(r.ring(), &["x", "y"]);
                let lifted = r.lift(&frobenius_power(&i, p).unwrap()).unwrap();
                black_box(Ideal::new(r.ring(), lifted.generators().to_vec()).unwrap().groebner().len())
            })
        });
    }
    let r = fermat_cubic(7);
    let ctx = CharPContext::new(7, 2).unwrap();
    g.bench_function("certify_fermat_f7_e2", |b| {
        let i = ideal(r.ring(), &["x", "y"]);
        let u = tightlab_core::parse_poly(r.ring(), "z^2").unwrap();
        let c = tightlab_core::parse_poly(r.ring(), "x^2").unwrap();
        b.iter(|| black_box(tc_certify_in(&u, &i, &c, &r, &ctx, None).unwrap().status))
    });
    g.finish();
}

fn minors(c: &mut Criterion) {
    let mut g = c.benchmark_group("minors");
    for n in [3usize, 4, 5] {
        let m = circulant(n);
        g.bench_with_input(BenchmarkId::new("circulant", n), &n, |b, &n| b.iter(|| black_box(minor_list(&m, n - 1).len())));
    }
    g.finish();
}

criterion_group!(benches, groebner, bracket_powers, minors);
criterion_main!(benches);
