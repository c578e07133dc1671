use relsmooth_bench::*;
use relsmooth_core::*;

#[test]
fn fixtures_build() {
    let budget = Budget::default();
    assert_eq!(buchberger(&twisted_cubic(), &MonomialOrder::GrevLex, &budget).unwrap().basis().len(), 3);
    assert!(buchberger(&cyclic4(), &MonomialOrder::GrevLex, &budget).is_ok());
    assert!(is_smooth(&etale_map(), &budget).unwrap().is_smooth());
    let a = truncated(3);
    assert_eq!(a.dim(), 3);
    let k = residue_field(&a);
    assert_eq!(rel_pd(&FDSubalgebra::scalars(&a), &k, 3), ExtendedNat::AtLeast(4));
}
