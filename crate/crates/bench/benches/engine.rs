use criterion::{black_box, criterion_group, criterion_main, Criterion};
use multalpha::specfun::normal_cdf;
