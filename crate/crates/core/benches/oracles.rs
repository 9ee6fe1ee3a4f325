use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use levmeas::additive::AdditiveFamily;
use levmeas::exec::Execution;
use levmeas::expvec::ExpVec;
use levmeas::family::DistinguishedFamily;
use levmeas::field::{FieldElement, FieldParams};
use levmeas::forest::Presentation;
use levmeas::matrix::{gl_order_by_enumeration, index_enumeration_oracle, GroupKind};
use levmeas::oracle::oracle_single_level_measure;

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("gl_order_m3_p3");
    for (name, exec) in STRATEGIES {
        g.bench_function(name, |b| b.iter(|| gl_order_by_enumeration(3, 3, exec).unwrap()));
    }
    g.finish();

    let mut g = c.benchmark_group("index_oracle_sl2_p3_1_3");
    for (name, exec) in STRATEGIES {
        g.bench_function(name, |b| b.iter(|| index_enumeration_oracle(GroupKind::SL, 2, 3, 1, 3, exec).unwrap()));
    }
    g.finish();
}

/// O minus a handful of deep holes, counted cell by cell.
fn single_level(c: &mut Criterion) {
    let params = FieldParams::new(3, 2).unwrap();
    let fam = AdditiveFamily::new(params);
    let zero = ExpVec::zero(2);
    let big = fam.subgroup(&zero).unwrap();
    let small: Vec<_> = (0..4)
        .map(|k| {
            let shift = FieldElement::monomial(params, 1, ExpVec::from(vec![k, 0]));
            fam.translate(&shift, &fam.subgroup(&ExpVec::from(vec![6, 0])).unwrap())
        })
        .collect();
    let pres = Presentation::shells(vec![big], small);
    let level = ExpVec::zero(1);
    let mut g = c.benchmark_group("single_level_oracle");
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::new(name, "depth6"), &pres, |b, pres| {
            b.iter(|| oracle_single_level_measure(&fam, pres, &level, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, single_level);
criterion_main!(benches);
