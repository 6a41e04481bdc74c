use svect::coxzoo::{classify_table, TypeSymbol};

/// Boldface entries of the `n <= 30` table: `(n, r, symbol)`.
const SPONTANEOUS: &[(i64, i64, &str)] = &[
    (8, 6, "svect:2,3,5"),
    (12, 6, "svect:2,3,7"),
    (14, 9, "svect:2,3,8"),
    (18, 8, "svect:2,4,7"),
    (18, 9, "svect:2,3,10"),
    (20, 12, "svect:2,3,11"),
    (24, 8, "svect:2,4,9"),
    (24, 12, "svect:2,3,13"),
    (26, 15, "svect:2,3,14"),
    (30, 12, "svect:2,4,11"),
    (30, 15, "svect:2,3,16"),
];

#[test]
fn spontaneous_cells_up_to_30() {
    let table = classify_table(30).unwrap();
    let mut found: Vec<(i64, i64, TypeSymbol)> = table
        .iter()
        .flat_map(|c| c.spontaneous.iter().map(move |s| (c.n, c.r, *s)))
        .collect();
    found.sort();
    let mut expected: Vec<(i64, i64, TypeSymbol)> =
        SPONTANEOUS.iter().map(|&(n, r, s)| (n, r, s.parse().unwrap())).collect();
    expected.sort();
    assert_eq!(found, expected);
}

#[test]
fn happel_seidel_series_present() {
    let table = classify_table(30).unwrap();
    for a in 3..=16i64 {
        for b in a..=16 {
            let n = (a - 1) * (b - 1);
            if n > 30 {
                continue;
            }
            let s = TypeSymbol::stable_vect(2, a, b).unwrap();
            for r in [a, b.min(n)] {
                let cell = table.iter().find(|c| c.n == n && c.r == r).unwrap();
                assert!(cell.contains(&s), "A_{n}({r}) lacks {s}");
            }
        }
    }
}
