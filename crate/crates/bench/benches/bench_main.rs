
use criterion::{criterion_group, criterion_main};

criterion_group!(benches, enumerate::bench, maps::bench);
criterion_main!(benches);
