mod common;

use proptest::prelude::*;
use steinhaus_core::tetra::{
    derive_2d, pascal_tetrahedron, search_balanced_tetra, steinhaus_tetrahedron, tetra_cardinality, TetraKind,
    TriangleSlice,
};

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

fn trinomial(f: usize, x: usize, y: usize) -> u128 {
    factorial(f) / (factorial(x) * factorial(y) * factorial(f - x - y))
}

/// Floor `f` of the orbit of `base` from the trinomial expansion.
fn closed_form_floor(base: &TriangleSlice, f: usize) -> Vec<Vec<u64>> {
    let n = base.modulus() as u128;
    let size = base.size() - f;
    (0..size)
        .map(|i| {
            (0..size - i)
                .map(|j| {
                    let mut acc = 0u128;
                    for x in 0..=f {
                        for y in 0..=f - x {
                            acc += trinomial(f, x, y) % n * base.get(i + x, j + y) as u128;
                        }
                    }
                    (acc % n) as u64
                })
                .collect()
        })
        .collect()
}

fn slice_strategy(max_size: usize, max_n: u64) -> impl Strategy<Value = TriangleSlice> {
    (1..=max_size, 2..=max_n).prop_flat_map(|(m, n)| {
        prop::collection::vec(0..n, m * (m + 1) / 2).prop_map(move |cells| TriangleSlice::from_cells(n, m, &cells).unwrap())
    })
}

#[test]
fn tetrahedron_example_mod_5() {
    let base = TriangleSlice::from_digit_rows(5, &["0443100", "212013", "43201", "4302", "233", "04", "4"]).unwrap();
    let t = steinhaus_tetrahedron(&base).unwrap();
    let expected: [&[&str]; 7] = [
        &["0443100", "212013", "43201", "4302", "233", "04", "4"],
        &["144423", "21410", "1323", "410", "00", "3"],
        &["24220", "4324", "310", "01", "3"],
        &["0411", "011", "42", "4"],
        &["413", "04", "0"],
        &["03", "4"],
        &["2"],
    ];
    assert_eq!(t.floors().len(), 7);
    for (f, rows) in expected.iter().enumerate() {
        assert_eq!(t.floors()[f].row_strings(), rows.to_vec(), "floor {f}");
    }
    assert_eq!(t.cardinality(), 84);
    let json = t.to_json();
    assert_eq!(json["modulus"], 5);
    assert_eq!(json["floors"].as_array().unwrap().len(), 7);
}

#[test]
fn cardinalities_of_both_kinds() {
    for m in 1..=10 {
        let c = common::binomial(m as u64 + 2, 3) as usize;
        assert_eq!(tetra_cardinality(m), c);
        assert_eq!(steinhaus_tetrahedron(&TriangleSlice::zeros(3, m).unwrap()).unwrap().cardinality(), c);
        assert_eq!(pascal_tetrahedron(&TriangleSlice::zeros(3, 3 * m - 2).unwrap()).unwrap().cardinality(), c);
    }
}

#[test]
fn pascal_tetrahedron_needs_base_of_size_3m_minus_2() {
    for size in [2, 3, 5, 6, 8] {
        assert!(pascal_tetrahedron(&TriangleSlice::zeros(3, size).unwrap()).is_err(), "size {size}");
    }
    let one = TriangleSlice::new(7, vec![vec![5]]).unwrap();
    assert_eq!(pascal_tetrahedron(&one).unwrap().floors()[0].rows(), &[vec![5]]);
}

#[test]
fn central_unit_gives_trinomial_coefficients() {
    for m in 1..=6usize {
        let n = 1000;
        let size = 3 * m - 2;
        let mut base = TriangleSlice::zeros(n, size).unwrap();
        base.set(m - 1, m - 1, 1);
        let t = pascal_tetrahedron(&base).unwrap();
        assert_eq!(t.floors().len(), m);
        for (f, floor) in t.floors().iter().enumerate() {
            assert_eq!(floor.size(), f + 1);
            for x in 0..=f {
                for y in 0..=f - x {
                    assert_eq!(floor.get(x, y) as u128, trinomial(f, x, y), "m={m} f={f} ({x},{y})");
                }
            }
        }
    }
}

#[test]
fn tetra_search_small_cases() {
    let r = search_balanced_tetra(2, 2, TetraKind::Steinhaus, None).unwrap();
    assert!(r.exhaustive && r.admissible);
    let r4 = search_balanced_tetra(4, 2, TetraKind::Steinhaus, None).unwrap();
    assert!(r4.exhaustive && r4.admissible);
    let r5 = search_balanced_tetra(5, 2, TetraKind::Steinhaus, None).unwrap();
    assert!(!r5.admissible && r5.found.is_empty() && r5.examined == 0);
}

/// Every base of the given size over `Z/nZ` whose tetrahedron is balanced,
/// restricted to bases that vanish outside `support`.
fn brute_force(n: u64, size: usize, support: &[bool], pascal: bool) -> Vec<Vec<u64>> {
    let cells = size * (size + 1) / 2;
    let free: Vec<usize> = (0..cells).filter(|&c| support[c]).collect();
    let mut out = Vec::new();
    for choice in common::all_sequences(n, free.len()) {
        let mut flat = vec![0; cells];
        for (&c, &v) in free.iter().zip(&choice) {
            flat[c] = v;
        }
        let base = TriangleSlice::from_cells(n, size, &flat).unwrap();
        let t = if pascal { pascal_tetrahedron(&base) } else { steinhaus_tetrahedron(&base) }.unwrap();
        if t.is_balanced() {
            out.push(flat);
        }
    }
    out.sort();
    out
}

/// Base cells that influence the Pascal tetrahedron, found by linearity.
fn pascal_support(size: usize) -> Vec<bool> {
    let cells = size * (size + 1) / 2;
    (0..cells)
        .map(|c| {
            let mut flat = vec![0; cells];
            flat[c] = 1;
            let base = TriangleSlice::from_cells(1000, size, &flat).unwrap();
            pascal_tetrahedron(&base).unwrap().floors().iter().any(|f| f.values().any(|v| v != 0))
        })
        .collect()
}

/// The search keeps at most 100 bases; those it keeps must all be genuine.
fn same_or_subset(found: &mut Vec<Vec<u64>>, expected: &[Vec<u64>]) {
    found.sort();
    assert_eq!(found.len(), expected.len().min(100));
    if expected.len() <= 100 {
        assert_eq!(found.as_slice(), expected);
    } else {
        assert!(found.iter().all(|b| expected.binary_search(b).is_ok()));
    }
}

#[test]
fn tetra_search_matches_brute_force() {
    for (n, m) in [(2u64, 2usize), (4, 2), (2, 3), (5, 3), (10, 3), (3, 4)] {
        let cells = m * (m + 1) / 2;
        let mut r = search_balanced_tetra(n, m, TetraKind::Steinhaus, None).unwrap();
        if !r.admissible {
            assert!(tetra_cardinality(m) as u64 % n != 0);
            continue;
        }
        let expected = brute_force(n, m, &vec![true; cells], false);
        assert_eq!(r.found_count, expected.len() as u64, "n={n} m={m}");
        same_or_subset(&mut r.found, &expected);
    }
    for (n, m) in [(2u64, 2usize), (4, 2)] {
        let size = 3 * m - 2;
        let mut r = search_balanced_tetra(n, m, TetraKind::Pascal, None).unwrap();
        let expected = brute_force(n, size, &pascal_support(size), true);
        assert_eq!(r.found_count, expected.len() as u64, "pascal n={n} m={m}");
        same_or_subset(&mut r.found, &expected);
    }
}

#[test]
fn tetra_search_budget_stops_early() {
    let r = search_balanced_tetra(5, 3, TetraKind::Steinhaus, Some(10)).unwrap();
    assert!(!r.exhaustive);
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn derived_floors_match_trinomial_expansion(base in slice_strategy(6, 7)) {
        let mut cur = base.clone();
        for f in 0..base.size() {
            prop_assert_eq!(cur.rows().to_vec(), closed_form_floor(&base, f));
            cur = derive_2d(&cur);
        }
        let t = steinhaus_tetrahedron(&base).unwrap();
        prop_assert_eq!(t.cardinality(), tetra_cardinality(base.size()));
        if t.is_balanced() {
            prop_assert_eq!(t.cardinality() as u64 % base.modulus(), 0);
        }
    }

    #[test]
    fn pascal_floors_are_central_cells(m in 1usize..=3, n in 2u64..8, seed in prop::collection::vec(0u64..8, 28)) {
        let size = 3 * m - 2;
        let cells: Vec<u64> = seed[..size * (size + 1) / 2].iter().map(|v| v % n).collect();
        let base = TriangleSlice::from_cells(n, size, &cells).unwrap();
        let t = pascal_tetrahedron(&base).unwrap();
        let mut cur = base.clone();
        for f in 0..m {
            for x in 0..=f {
                for y in 0..=f - x {
                    prop_assert_eq!(t.floors()[f].get(x, y), cur.get(m - 1 - x, m - 1 - y));
                }
            }
            cur = derive_2d(&cur);
        }
    }
}
