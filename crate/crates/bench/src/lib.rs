//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use relsmooth_core::algebra::ComponentImage;
use relsmooth_core::*;

fn budget() -> Budget {
    Budget::default()
}

fn ring(vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(Field::Rational, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::GrevLex)
}

/// The ideal of the twisted cubic in `Q[x,y,z,w]`.
pub fn twisted_cubic() -> Ideal {
    let r = ring(&["x", "y", "z", "w"]);
    let v: Vec<Poly> = (0..4).map(|i| Poly::var(&r, i)).collect();
    let (x, y, z, w) = (&v[0], &v[1], &v[2], &v[3]);
    Ideal::new(&r, vec![&(x * z) - &(y * y), &(y * w) - &(z * z), &(x * w) - &(y * z)]).unwrap()
}

/// Cyclic-4 in `Q[a,b,c,d]`.
pub fn cyclic4() -> Ideal {
    let r = ring(&["a", "b", "c", "d"]);
    let v: Vec<Poly> = (0..4).map(|i| Poly::var(&r, i)).collect();
    let one = Poly::constant(&r, Field::Rational.one());
    // Sum of the cyclic products of `k` consecutive variables; for `k = 4` they coincide.
    let cyc = |k: usize| {
        let terms = if k == 4 { 1 } else { 4 };
        let mut s = Poly::constant(&r, Field::Rational.zero());
        for i in 0..terms {
            let t = (0..k).fold(one.clone(), |t, j| &t * &v[(i + j) % 4]);
            s = &s + &t;
        }
        s
    };
    Ideal::new(&r, vec![cyc(1), cyc(2), cyc(3), &cyc(4) - &one]).unwrap()
}

/// `Q[t] → Q[t,u]/(tu - 1)`, an open immersion.
pub fn etale_map() -> RingMap {
    let b = PresentedAlgebra::quotient(Field::Rational, &["t"], |_| vec![], &budget()).unwrap();
    let a = PresentedAlgebra::quotient(
        Field::Rational,
        &["t", "u"],
        |r| vec![&(&Poly::var(r, 0) * &Poly::var(r, 1)) - &Poly::constant(r, Field::Rational.one())],
        &budget(),
    )
    .unwrap();
    let t = Poly::var(a.component(0).ring(), 0);
    RingMap::new(b, a, vec![ComponentImage { source: 0, images: vec![t] }]).unwrap()
}

/// `Q[x]/(x^n)` as a finite-dimensional algebra.
pub fn truncated(n: u32) -> FDAlgebra {
    let a = PresentedAlgebra::quotient(Field::Rational, &["x"], |r| vec![Poly::var(r, 0).pow(n).unwrap()], &budget()).unwrap();
    fd_from_presentation(&a).unwrap().algebra
}

/// The simple module `k` over `Q[x]/(x^n)`.
pub fn residue_field(a: &FDAlgebra) -> FDModule {
    let actions = (0..a.dim())
        .map(|i| {
            let c = if i == 0 { Field::Rational.one() } else { Field::Rational.zero() };
            Matrix::from_rows(&Field::Rational, 1, vec![vec![c]])
        })
        .collect();
    FDModule::new(a, 1, actions).unwrap()
}
