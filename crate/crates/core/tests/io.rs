mod common;

use common::*;
use rand::Rng;
use sparsegraph_core::io::{self, EdgeListOptions};
use sparsegraph_core::{Domain, Error};

#[test]
fn matrix_market_round_trips_every_domain() {
    let mut r = rng(40);
    for sr in named_semirings() {
        for _ in 0..30 {
            let a = random_matrix(&sr, r.gen_range(1..=20), r.gen_range(1..=20), 0.3, &mut r);
            let text = io::to_matrix_market_string(&a);
            let back = io::read_matrix_market(text.as_bytes(), "mem.mtx").unwrap();
            assert_eq!(back, a, "{}", sr.name());
            assert_eq!(io::to_matrix_market_string(&back), text);
        }
    }
}

#[test]
fn tsv_round_trips_every_domain() {
    let mut r = rng(41);
    for sr in named_semirings() {
        for one_based in [false, true] {
            let a = random_matrix(&sr, r.gen_range(1..=20), r.gen_range(1..=20), 0.3, &mut r);
            let text = io::to_tsv_string(&a, one_based);
            assert_eq!(io::parse_tsv(&text, "mem.tsv", one_based, None).unwrap(), a);
        }
    }
}

#[test]
fn golden_files_are_byte_stable() {
    for name in ["fig1_adjacency.mtx", "fig2_e_out.mtx", "fig2_e_in.mtx"] {
        let path = data_path(name);
        let bytes = std::fs::read_to_string(&path).unwrap();
        let a = io::read_matrix_market_file(&path).unwrap();
        assert_eq!(io::to_matrix_market_string(&a), bytes, "{name}");
    }
}

#[test]
fn file_round_trip_through_disk() {
    let dir = std::env::temp_dir().join(format!("sparsegraph-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = fixture_adjacency();
    let mm = dir.join("a.mtx");
    io::write_matrix_market_file(&mm, &a).unwrap();
    assert_eq!(io::read_matrix_market_file(&mm).unwrap(), a);
    let tsv = dir.join("a.tsv");
    io::write_tsv_file(&tsv, &a, true).unwrap();
    assert_eq!(io::read_tsv_file(&tsv, true, Some(Domain::Real)).unwrap(), a);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn edge_list_of_fixture() {
    let edges = io::read_edge_list(data_path("fig1_edges.tsv"), &one_based()).unwrap();
    assert_eq!(edges.len(), 12);
    assert_eq!(edges[0].out_vertices, vec![0]);
    assert_eq!(edges[0].in_vertices, vec![1]);
    assert_eq!(edges[0].line, 2);
}

#[test]
fn missing_file_is_io_error() {
    let err = io::read_matrix_market_file("/nonexistent/x.mtx").unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
    let err = io::read_edge_list("/nonexistent/x.tsv", &EdgeListOptions::default()).unwrap_err();
    assert!(err.to_string().contains("/nonexistent/x.tsv"));
}
