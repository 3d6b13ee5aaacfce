use orbifolder::exact::rat;
use orbifolder::isometry::Fixture;
use orbifolder::search::{find_short, reproduce_table, Execution, SearchOptions};

fn options(execution: Execution) -> SearchOptions {
    SearchOptions { execution, ..SearchOptions::default() }
}

#[test]
fn e8_cubed_swap_has_one_short_class() {
    let fixture = Fixture::load("e8x3_swap").unwrap();
    let res = find_short(&fixture, &SearchOptions::default()).unwrap();
    assert_eq!(res.filters.candidates, 256);
    assert!(res.count.exact);
    assert_eq!(res.classes.len(), 1);
    let r = &res.classes[0].report;
    assert_eq!(r.order, 2);
    assert_eq!(r.conformal_weights[0].rho, rat(1, 1));
    assert_eq!(r.orbifold_dim, 384);
    assert_eq!(r.identification.resolved, Some(62));
}

#[test]
fn sequential_and_parallel_agree() {
    let fixture = Fixture::load("leech_k").unwrap();
    let seq = find_short(&fixture, &options(Execution::Sequential)).unwrap();
    let par = find_short(&fixture, &options(Execution::Parallel { jobs: 2 })).unwrap();
    assert_eq!(seq.filters, par.filters);
    assert_eq!(seq.count, par.count);
    let hs = |r: &orbifolder::search::SearchResult| r.classes.iter().map(|c| c.report.h.clone()).collect::<Vec<_>>();
    assert_eq!(hs(&seq), hs(&par));
    assert_eq!(seq.classes[0].report.identification.resolved, Some(4));
}

#[test]
fn table_cells_without_fixtures_are_skipped() {
    let cells = vec!["A20".to_string()];
    let report = reproduce_table('K', Some(&cells), Execution::Sequential).unwrap();
    assert_eq!(report.cells[0].status, "skipped");
    assert!(reproduce_table('K', Some(&["nowhere".to_string()]), Execution::Sequential).is_err());
}
