mod common;

use common::{balanced, lozenge_cells, orbit_rows, pascal_rows};
use proptest::prelude::*;
use steinhaus_core::lab::{
    admissible_orders, balanced_dats, family_window_antisymmetric, proportion_report, verify_antisymmetric_figures,
    verify_base_triangles, verify_elementary_triangles, verify_idao_figures, verify_universal_figures,
    worked_example_figures, FamilyParams, Offsets, OrderKind, PascalHeights,
};
use steinhaus_core::residue::units;
use steinhaus_core::Figure;

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

fn congruent(x: i64, r: i64, m: u64) -> bool {
    (x - r).rem_euclid(m as i64) == 0
}

/// Terms of `IAP((a0,a1,a2),(d0,d1,d2))` modulo `n` over `[j0, j1]`.
fn iap3(n: u64, a: [i64; 3], d: [i64; 3], j0: i64, j1: i64) -> Vec<u64> {
    (j0..=j1)
        .map(|j| {
            let r = j.rem_euclid(3) as usize;
            common::reduce(a[r] + j.div_euclid(3) * d[r], n)
        })
        .collect()
}

/// Row `row` of the orbit of the progression over columns `[j0, j1]`.
fn orbit_window(n: u64, a: [i64; 3], d: [i64; 3], row: usize, j0: i64, j1: i64) -> Vec<u64> {
    let mut w = iap3(n, a, d, j0, j1 + row as i64);
    for _ in 0..row {
        w = w.windows(2).map(|p| (p[0] + p[1]) % n).collect();
    }
    w
}

/// Tally of figures checked by a naive sweep.
#[derive(Default)]
struct Tally {
    figures: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, cells: &[u64], n: u64, what: impl FnOnce() -> String) {
        self.figures += 1;
        if !balanced(cells, n) {
            self.failures.push(what());
        }
    }

    /// A triangle over `base`, together with its trapezoids of heights `hs`.
    fn triangle(&mut self, base: &[u64], n: u64, hs: impl Iterator<Item = usize>, what: &str) {
        let rows = orbit_rows(base, n);
        self.check(&rows.concat(), n, || format!("{what} triangle"));
        for h in hs {
            self.check(&rows[..h].concat(), n, || format!("{what} trapezoid {h}"));
        }
    }

    fn pascal(&mut self, base: &[u64], n: u64, hs: impl Iterator<Item = usize>, what: &str) {
        let rows = pascal_rows(base, n);
        self.check(&rows.concat(), n, || format!("{what} pascal"));
        for h in hs {
            self.check(&rows[rows.len() - h..].concat(), n, || format!("{what} pascal trapezoid {h}"));
        }
    }
}

fn universal_oracle(n: u64, d: u64, lambda: usize) -> Tally {
    let d = d as i64;
    let (a, dd) = ([0, -d, d], [d, -2 * d, d]);
    let (p, p3) = (n, 3 * n);
    let mut t = Tally::default();
    for m in 1..=lambda * p3 as usize {
        let mc = m as i64;
        if congruent(mc, 0, p) {
            let hs = (1..=m).filter(|&h| congruent(h as i64, 0, p) || congruent(h as i64, mc + 1, p3));
            t.triangle(&orbit_window(n, a, dd, 0, mc, 2 * mc - 1), n, hs, &format!("S[{m},{}]", 2 * m - 1));
        }
        if congruent(mc, -1, p3) {
            let hs = (1..=m).filter(|&h| congruent(h as i64, -1, p) || congruent(h as i64, 0, p3));
            t.triangle(&orbit_window(n, a, dd, 1, 0, mc - 1), n, hs, &format!("∂S[0,{}]", m - 1));
        }
        let base = orbit_window(n, a, dd, 1, -mc, mc - 2);
        if congruent(mc, -1, p) || congruent(mc, 0, p3) {
            let hs = (1..=m).filter(|&h| congruent(h as i64, mc + 1, p) || congruent(h as i64, mc, p3));
            t.pascal(&base, n, hs, &format!("∂S[{},{}]", -mc, mc - 2));
        }
        if congruent(mc, 0, p) {
            t.check(&lozenge_cells(&base, n), n, || format!("lozenge of order {}", 2 * m - 1));
        }
    }
    t
}

fn antisymmetric_oracle(n: u64, a: u64, d: u64, lambda: usize) -> Tally {
    let (a, d) = (a as i64, d as i64);
    let (first, diff) = ([a, -d, d - a], [d, -2 * d, d]);
    let p = 3 * n;
    let mut t = Tally::default();
    for l in 1..=lambda {
        let big = l * p as usize;
        let hs = (1..=big).filter(|&h| congruent(h as i64, 0, p) || congruent(h as i64, 1, p));
        t.triangle(&orbit_window(n, first, diff, 0, 0, big as i64 - 1), n, hs, "S[0,3λn-1]");
        let hs = (1..big).filter(|&h| congruent(h as i64, -1, p) || congruent(h as i64, 0, p));
        t.triangle(&orbit_window(n, first, diff, 1, 0, big as i64 - 2), n, hs, "∂S[0,3λn-2]");
    }
    for m in 1..=lambda * p as usize {
        let mc = m as i64;
        if !(congruent(mc, 0, p) || congruent(mc, -1, p)) {
            continue;
        }
        let base = orbit_window(n, first, diff, 1, -mc, mc - 2);
        let hs = (1..=m).filter(|&h| congruent(h as i64, mc, p) || congruent(h as i64, mc + 1, p));
        t.pascal(&base, n, hs, &format!("∂S[{},{}]", -mc, mc - 2));
        if congruent(mc, 0, p) {
            t.check(&lozenge_cells(&base, n), n, || format!("lozenge of order {}", 2 * m - 1));
        }
    }
    t
}

fn family_oracle(n: u64, q: FamilyParams, lambda: usize, offsets: &Offsets) -> Tally {
    let s = q.a0 + q.a1 + q.a2;
    let (first, diff) = ([q.a0, q.a1, q.a2], [q.d, -2 * q.d - 3 * s, q.d + 3 * s]);
    let p = 6 * n;
    let mut t = Tally::default();
    for l in 1..=lambda {
        for &r in &offsets.rows {
            for &c in &offsets.cols {
                let big = l * p as usize;
                for m in [big, big - 1] {
                    let mc = m as i64;
                    let hs = || (1..=m).filter(move |&h| congruent(h as i64, mc, p) || congruent(h as i64, mc + 1, p));
                    t.triangle(&orbit_window(n, first, diff, r, c, c + mc - 1), n, hs(), "orbit");
                    let base = orbit_window(n, first, diff, r, c, c + 2 * mc - 2);
                    t.pascal(&base, n, hs(), "orbit");
                    if m == big {
                        t.check(&lozenge_cells(&base, n), n, || format!("lozenge {r} {c} {m}"));
                    }
                }
            }
        }
    }
    t
}

#[test]
fn universal_sweep_matches_independent_recount() {
    for n in [3u64, 5, 7, 9] {
        for d in units(n) {
            let oracle = universal_oracle(n, d, 2);
            assert!(oracle.failures.is_empty(), "n={n} d={d}: {:?}", oracle.failures);
            let report = verify_universal_figures(n, d, 2, PascalHeights::Complement).unwrap();
            assert!(report.passed(), "n={n} d={d}");
            assert_eq!(report.examined, oracle.figures, "n={n} d={d}");
        }
    }
}

#[test]
fn swapped_pascal_trapezoid_heights_fail() {
    // h ≡ m (mod n) or h ≡ m+1 (mod 3n) instead of the complementary classes.
    for n in [5u64, 7, 9] {
        let report = verify_universal_figures(n, 1, 2, PascalHeights::Swapped).unwrap();
        assert!(!report.passed(), "n={n}");
        assert!(report.violations.iter().all(|v| v.label.starts_with("pascal trapezoid")));
    }
}

#[test]
fn antisymmetric_sweep_matches_independent_recount() {
    for n in [3u64, 5, 7, 9] {
        for d in units(n) {
            for a in 0..n {
                let oracle = antisymmetric_oracle(n, a, d, 2);
                assert!(oracle.failures.is_empty(), "n={n} a={a} d={d}: {:?}", oracle.failures);
                let report = verify_antisymmetric_figures(n, a, d, 2).unwrap();
                assert!(report.passed());
                assert_eq!(report.examined, oracle.figures, "n={n} a={a} d={d}");
            }
        }
    }
}

#[test]
fn family_sweep_matches_independent_recount() {
    let offsets = Offsets { rows: vec![0, 1, 5], cols: vec![-2, 0, 1, 2] };
    for n in [3u64, 5] {
        let ni = n as i64;
        for a0 in 0..ni {
            for a1 in 0..ni {
                for a2 in 0..ni {
                    for d in 1..ni {
                        let s = a0 + a1 + a2;
                        let unit = |x: i64| common::gcd(common::reduce(x, n), n) == 1;
                        if !(unit(d) && unit(d + 3 * s) && unit(2 * d + 3 * s)) {
                            assert!(verify_idao_figures(n, FamilyParams { a0, a1, a2, d }, 1, &offsets).is_err());
                            continue;
                        }
                        let q = FamilyParams { a0, a1, a2, d };
                        let oracle = family_oracle(n, q, 1, &offsets);
                        assert!(oracle.failures.is_empty(), "{q:?} mod {n}: {:?}", oracle.failures);
                        let report = verify_idao_figures(n, q, 1, &offsets).unwrap();
                        assert!(report.passed());
                        assert_eq!(report.examined, oracle.figures);
                    }
                }
            }
        }
    }
}

#[test]
fn elementary_and_base_triangles() {
    for n in [3u64, 5, 7, 9, 15, 21] {
        for d in units(n) {
            assert!(verify_elementary_triangles(n, d).unwrap().passed(), "n={n} d={d}");
            let di = d as i64;
            let (a, dd) = ([0, -di, di], [di, -2 * di, di]);
            let ni = n as i64;
            let tri = |k: i64| orbit_rows(&orbit_window(n, a, dd, 0, k * ni, (k + 1) * ni - 1), n).concat();
            let pas = |k: i64| pascal_rows(&orbit_window(n, a, dd, 1, k * ni + 1, (k + 2) * ni - 3), n).concat();
            assert!(balanced(&tri(1), n));
            assert!(balanced(&[tri(0), tri(2)].concat(), n));
            assert!(balanced(&pas(2), n));
            assert!(balanced(&[pas(0), pas(1)].concat(), n));
            for a in 0..n {
                assert!(verify_base_triangles(n, a, d).unwrap().passed(), "n={n} a={a} d={d}");
            }
        }
    }
}

#[test]
fn antisymmetric_windows_need_the_family_parameters() {
    for n in [3u64, 5, 7] {
        let ni = n as i64;
        for a0 in 0..ni {
            for a1 in 0..ni {
                for a2 in 0..ni {
                    for d in 0..ni {
                        let q = FamilyParams { a0, a1, a2, d };
                        let expected = (a0 + a1 + a2) % ni == 0 && (a1 + d) % ni == 0;
                        for lambda in 1..=2 {
                            let got = family_window_antisymmetric(n, q, 3 * lambda * n as usize).unwrap();
                            assert_eq!(got, expected, "{q:?} mod {n}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn worked_example_figures_are_balanced() {
    let figs = worked_example_figures().unwrap();
    let sizes: Vec<usize> = figs.iter().map(Figure::cardinality).collect();
    assert_eq!(sizes, vec![171, 171, 324]);
    let counts: Vec<Vec<u64>> = figs.iter().map(|f| f.multiplicity().counts().to_vec()).collect();
    assert_eq!(counts, vec![vec![57; 3], vec![57; 3], vec![108; 3]]);
    // Independent recount from the progression itself.
    let (a, d) = ([0, 1, 2], [1, 1, 1]);
    assert_eq!(orbit_rows(&orbit_window(3, a, d, 4, 0, 17), 3).concat().len(), 171);
    assert!(balanced(&orbit_rows(&orbit_window(3, a, d, 4, 0, 17), 3).concat(), 3));
    assert!(balanced(&pascal_rows(&orbit_window(3, a, d, 27, -20, 14), 3).concat(), 3));
    assert!(balanced(&lozenge_cells(&orbit_window(3, a, d, 8, 5, 39), 3), 3));
    // The apex of the Pascal triangle sits in row 27, column -3.
    assert_eq!(figs[1].rows()[0], orbit_window(3, a, d, 27, -3, -3));
}

#[test]
fn admissible_orders_examples() {
    assert_eq!(admissible_orders(15, OrderKind::Triangle).unwrap().classes, vec![0, 5, 9, 14]);
    let even = admissible_orders(4, OrderKind::Triangle).unwrap();
    assert_eq!((even.period, even.classes), (8, vec![0, 7]));
    assert_eq!(admissible_orders(9, OrderKind::Lozenge).unwrap().classes, vec![0, 3, 6]);
}

#[test]
fn proportions_reach_the_bound() {
    for n in [3u64, 5, 7, 9, 15, 21, 25, 27, 35, 45, 105] {
        let r = proportion_report(n).unwrap();
        assert!(r.meets_bound(), "n={n}");
        if r.omega == 1 {
            assert_eq!(r.triangle_fraction(), (2, 3), "n={n}");
            assert_eq!(r.pascal_fraction(), (2, 3), "n={n}");
        }
    }
    assert_eq!(proportion_report(15).unwrap().bound, Some((1, 3)));
}

#[test]
fn balanced_dats_match_enumeration() {
    for n in [3u64, 5] {
        for m in 1..=2 * n as usize {
            let mut expected = Vec::new();
            for a in 0..n {
                for d1 in 0..n {
                    for d2 in 0..n {
                        if balanced(&common::dat_cells(a as i64, d1 as i64, d2 as i64, m, n), n) {
                            expected.push((a, d1, d2));
                        }
                    }
                }
            }
            assert_eq!(balanced_dats(n, m).unwrap(), expected);
        }
    }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn admissible_classes_match_divisibility(n in 1u64..40, m in 0u64..400) {
        let tri = admissible_orders(n, OrderKind::Triangle).unwrap();
        let ok = (m * (m + 1) / 2) % n == 0;
        prop_assert_eq!(tri.classes.contains(&(m % tri.period)), ok);
        let loz = admissible_orders(n, OrderKind::Lozenge).unwrap();
        prop_assert_eq!(loz.classes.contains(&(m % loz.period)), (m * m) % n == 0);
    }

    #[test]
    fn admissible_trapezoid_pairs_match_divisibility(n in 1u64..25, m in 1u64..200, h in 1u64..200) {
        let h = h.min(m);
        let t = admissible_orders(n, OrderKind::Trapezoid).unwrap();
        let ok = (h * (2 * m - h + 1) / 2) % n == 0;
        prop_assert_eq!(t.pairs.contains(&(m % t.period, h % t.period)), ok);
    }
}
