use once_cell::sync::Lazy;

/// Largest even index `2n` held in the table.
pub const MAX_BERNOULLI_INDEX: usize = 30;

// (numerator, denominator) of B_2, B_4, ..., B_30
const EVEN_BERNOULLI: [(i64, i64); 15] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
];

struct Table {
    b: Vec<f64>,
    /// `B_{2j} / (2j)!`
    b_over_fact: Vec<f64>,
}

static TABLE: Lazy<Table> = Lazy::new(|| {
    let b: Vec<f64> = EVEN_BERNOULLI
        .iter()
        .map(|&(p, q)| p as f64 / q as f64)
        .collect();
    let mut fact = 1.0;
    let b_over_fact = b
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let m = 2 * (i + 1);
            fact *= ((m - 1) * m) as f64;
            v / fact
        })
        .collect();
    Table { b, b_over_fact }
});

/// `B_{2j}` for `1 <= j <= 15`.
pub fn bernoulli_even(j: usize) -> f64 {
    assert!(
        (1..=MAX_BERNOULLI_INDEX / 2).contains(&j),
        "B_{} not tabulated",
        2 * j
    );
    TABLE.b[j - 1]
}

/// `B_{2j} / (2j)!`.
pub(crate) fn bernoulli_over_factorial(j: usize) -> f64 {
    TABLE.b_over_fact[j - 1]
}
