use orbifolder::catalog::{self, format_root_system, identify_root_system};
use orbifolder::enumeration::Enumerator;
use orbifolder::exact::rat;

#[test]
fn every_niemeier_lattice_builds() {
    for label in catalog::niemeier_labels() {
        let n = catalog::niemeier(&label).unwrap();
        assert_eq!(n.lattice.rank(), 24);
        assert!(n.lattice.is_unimodular());
        let expected = {
            let mut c = n.spec.components.clone();
            c.sort();
            c
        };
        assert_eq!(n.roots.components, expected, "{label}");
        let count: usize = expected.iter().map(|c| c.root_count()).sum();
        assert_eq!(n.roots.roots.len(), count, "{label}");
        assert_eq!(n.roots.simple_roots.len(), if n.spec.leech { 0 } else { 24 }, "{label}");
        eprintln!("{label}: {}", format_root_system(&n.roots.components));
    }
}

#[test]
fn leech_minimum_is_four() {
    let leech = catalog::build_niemeier("A24").unwrap();
    let e = Enumerator::new(leech.gram()).unwrap();
    assert!(e.vectors_up_to_norm(&rat(2, 1)).is_empty());
    assert_eq!(e.vectors_up_to_norm(&rat(4, 1)).len(), 196560);
}

#[test]
fn generic_identification_agrees() {
    let a23 = catalog::build_niemeier("A23").unwrap();
    let comps = identify_root_system(&a23).unwrap();
    assert_eq!(format_root_system(&comps), "A1^24");
}
