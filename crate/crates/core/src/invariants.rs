//! Closed-form invariants of a length sequence: the Koszul criterion, the
//! Castelnuovo-Mumford regularity formula, the counting function behind the
//! Hilbert-series correction, and the rational-normal-scroll classification
//! predicates.

use crate::pencil::KWForm;
use crate::poly::QPoly;
use crate::rational::Rational;

/// The block lengths of a normal form: nilpotent lengths ascending, scroll
/// lengths ascending, Jordan groups with distinct ascending eigenvalues and
/// descending lengths inside each group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthSequence {
    pub nilpotent: Vec<usize>,
    pub scroll: Vec<usize>,
    pub jordan: Vec<(Rational, Vec<usize>)>,
}

impl LengthSequence {
    pub fn new(
        mut nilpotent: Vec<usize>,
        mut scroll: Vec<usize>,
        jordan: Vec<(Rational, Vec<usize>)>,
    ) -> Self {
        assert!(nilpotent.iter().all(|&m| m >= 1));
        assert!(scroll.iter().all(|&n| n >= 1));
        nilpotent.sort();
        scroll.sort();
        let mut jordan = jordan;
        for (_, lens) in jordan.iter_mut() {
            assert!(lens.iter().all(|&p| p >= 1));
            lens.sort_by(|a, b| b.cmp(a));
        }
        jordan.sort_by(|a, b| a.0.cmp(&b.0));
        for w in jordan.windows(2) {
            assert!(w[0].0 != w[1].0, "eigenvalues must be pairwise distinct");
        }
        LengthSequence {
            nilpotent,
            scroll,
            jordan,
        }
    }

    pub fn from_form(form: &KWForm) -> Self {
        LengthSequence::new(
            form.nilpotent_lengths(),
            form.scroll_lengths(),
            form.jordan_groups(),
        )
    }

    /// Length of the longest nilpotent block, 0 when there is none.
    pub fn max_nilpotent(&self) -> usize {
        self.nilpotent.last().copied().unwrap_or(0)
    }

    /// Length of the shortest scroll block, 0 when there is none.
    pub fn min_scroll(&self) -> usize {
        self.scroll.first().copied().unwrap_or(0)
    }
}

/// The length criterion: Koszul exactly when there is no nilpotent block of
/// length at least 2, or no scroll block, or the longest nilpotent length is
/// at most twice the shortest scroll length.
pub fn koszul_verdict(seq: &LengthSequence) -> bool {
    let m = seq.max_nilpotent();
    let n = seq.min_scroll();
    m <= 1 || n == 0 || m <= 2 * n
}

/// Castelnuovo-Mumford regularity of the determinantal ring over the ambient
/// polynomial ring: 1 when the longest nilpotent length is at most 1 or there
/// is no scroll block, otherwise ceil((m-1)/n).
pub fn regularity_formula(seq: &LengthSequence) -> usize {
    let m = seq.max_nilpotent();
    let n = seq.min_scroll();
    if m <= 1 || n == 0 {
        1
    } else {
        (m - 1).div_ceil(n)
    }
}

/// Number of tuples (v_1, ..., v_d) of non-negative integers with
/// sum n_j v_j <= b - 1 and sum v_j = q - 1, by direct enumeration.
pub fn count_n(scroll_lengths: &[usize], b: i64, q: i64) -> usize {
    assert!(!scroll_lengths.is_empty(), "at least one scroll length");
    count_n_inner(scroll_lengths, b, q)
}

fn count_n_inner(scroll_lengths: &[usize], b: i64, q: i64) -> usize {
    if q < 1 || b < 1 {
        return 0;
    }
    let need = q - 1;
    let cap = b - 1;
    fn rec(lens: &[usize], need: i64, cap: i64) -> usize {
        if lens.is_empty() {
            return usize::from(need == 0 && cap >= 0);
        }
        let n0 = lens[0] as i64;
        let mut total = 0usize;
        let mut v = 0i64;
        while v <= need && n0 * v <= cap {
            total += rec(&lens[1..], need - v, cap - n0 * v);
            v += 1;
        }
        total
    }
    rec(scroll_lengths, need, cap)
}

/// The correction polynomial H_R(v) - H_{R'}(v), where R' is the ring of the
/// scroll and Jordan part: (sum m_i - c) v plus, for q = 2..m, the count of
/// admissible tuples summed over the nilpotent blocks. Zero when there is no
/// nilpotent block.
pub fn hilbert_correction(seq: &LengthSequence) -> QPoly {
    let c = seq.nilpotent.len();
    if c == 0 {
        return QPoly::zero();
    }
    let m = seq.max_nilpotent();
    let linear: i64 = seq.nilpotent.iter().map(|&mi| mi as i64).sum::<i64>() - c as i64;
    let mut coeffs = vec![Rational::zero(); m + 1];
    coeffs[1] = Rational::from_int(linear);
    for q in 2..=m {
        let mut total = 0usize;
        for &mi in &seq.nilpotent {
            if mi < 2 {
                continue;
            }
            for r in 0..=(mi - 2) {
                total += count_n_inner(&seq.scroll, (mi - 1 - r) as i64, q as i64);
            }
        }
        coeffs[q] = Rational::from_int(total as i64);
    }
    QPoly::from_coeffs(coeffs)
}

/// A scroll type: block lengths sorted ascending, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScrollType(pub Vec<usize>);

impl ScrollType {
    pub fn new(mut lens: Vec<usize>) -> Self {
        assert!(!lens.is_empty() && lens.iter().all(|&n| n >= 1));
        lens.sort();
        ScrollType(lens)
    }
}

/// Classification predicates for the scroll of a given type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScrollClassification {
    /// Every natural-coordinate section keeps regularity at most that of the
    /// scroll: holds exactly for balanced types, n_t <= n_1 + 1.
    pub balanced_regularity: bool,
    /// Every natural-coordinate section is Koszul: n_t <= 2 n_1.
    pub linearly_koszul: bool,
    /// All lengths equal.
    pub strongly_koszul: bool,
    /// Every section by arbitrary linear forms is Koszul: one block, or two
    /// with n_2 <= 2 n_1, or three equal lengths.
    pub ul_koszul: bool,
    /// Every linear section keeps regularity at most 1: at most one block, or
    /// two with n_2 <= n_1 + 1, or three blocks of length 1.
    pub universal_regularity: bool,
}

pub fn classify_scroll(t: &ScrollType) -> ScrollClassification {
    let lens = &t.0;
    let k = lens.len();
    let n1 = lens[0];
    let nt = lens[k - 1];
    let all_equal = lens.iter().all(|&n| n == n1);
    ScrollClassification {
        balanced_regularity: nt <= n1 + 1,
        linearly_koszul: nt <= 2 * n1,
        strongly_koszul: all_equal,
        ul_koszul: k == 1 || (k == 2 && lens[1] <= 2 * lens[0]) || (k == 3 && all_equal),
        universal_regularity: k == 1
            || (k == 2 && lens[1] <= lens[0] + 1)
            || (k == 3 && all_equal && n1 == 1),
    }
}
