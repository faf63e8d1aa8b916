use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rslink::algebra::{instance_double_z2, instance_sweedler};
use rslink::quantum::Quantum;
use rslink::repcat::{coend_build, evaluate, KauffmanModel};
use rslink::tangle::{parse, print, random_string_link, DiagramType, SlicedDiagram, StringLinkParams};

fn links(strands: usize, crossings: usize, count: usize) -> Vec<SlicedDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..count)
        .map(|_| random_string_link(StringLinkParams { strands, max_crossings: crossings, extra_width: 1 }, &mut rng))
        .collect()
}

fn text(c: &mut Criterion) {
    let ds = links(3, 12, 16);
    let texts: Vec<String> = ds.iter().map(|d| print(DiagramType::StringLink(3), d)).collect();
    c.bench_function("parse 3 strands", |b| b.iter(|| texts.iter().map(|t| parse(black_box(t)).unwrap()).count()));
}

fn kauffman(c: &mut Criterion) {
    for strands in [1, 2, 3] {
        let ds = links(strands, 10, 8);
        let colors = vec![0; strands];
        c.bench_function(&format!("kauffman {strands} strands"), |b| {
            b.iter(|| ds.iter().map(|d| evaluate(&KauffmanModel, black_box(d), &colors).unwrap()).count())
        });
    }
}

fn phi(c: &mut Criterion) {
    for h in [instance_sweedler(), instance_double_z2()] {
        let coend = coend_build(&h).unwrap();
        let q = Quantum::new(&coend);
        for strands in [1, 2, 3] {
            let ds = links(strands, 8, 4);
            c.bench_function(&format!("phi {} {strands} strands", h.name), |b| {
                b.iter(|| ds.iter().map(|d| q.phi(black_box(d)).unwrap()).count())
            });
        }
    }
}

criterion_group!(benches, text, kauffman, phi);
criterion_main!(benches);
