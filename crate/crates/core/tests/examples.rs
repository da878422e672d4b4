use epg_core::density::density_vs_epg;
use epg_core::{build_epg, build_pg, epg_size_formula};

/// Number of 2-dimensional subspaces of GF(q)^n.
fn gaussian_2(n: u32, q: u64) -> u64 {
    (q.pow(n) - 1) * (q.pow(n) - q) / ((q * q - 1) * (q * q - q))
}

#[test]
fn line_counts_match_gaussian_coefficients() {
    for (n, q) in [(3u32, 2u64), (4, 2), (3, 3), (3, 4)] {
        let pg = build_pg(n as usize - 1, q).unwrap();
        let lines = pg.lines().unwrap();
        assert_eq!(lines.len() as u64, gaussian_2(n, q), "PG({},{q})", n - 1);
        assert!(lines.iter().all(|l| l.len() as u64 == q + 1));
    }
    assert_eq!(gaussian_2(4, 2), 35);
}

#[test]
fn density_against_the_extended_geometry() {
    assert_eq!(density_vs_epg(&build_pg(2, 4).unwrap(), 2, 1).unwrap(), 8);
    assert_eq!(density_vs_epg(&build_pg(2, 2).unwrap(), 2, 1).unwrap(), -6);
    assert_eq!(density_vs_epg(&build_epg(2, 2, 1).unwrap(), 2, 1).unwrap(), 0);
}

#[test]
fn count_over_gf3_matches_enumeration() {
    let m = build_epg(2, 3, 1).unwrap();
    assert_eq!(m.len(), 37);
    assert_eq!(epg_size_formula(3, 3, 1).unwrap(), (3u128.pow(4) - 1) / 2 - 3);
}
