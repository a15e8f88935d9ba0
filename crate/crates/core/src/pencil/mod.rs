//! 2xe matrices of linear forms, their matrix pencils, and Kronecker-
//! Weierstrass normal forms with strict-equivalence certificates.
//!
//! A row (l_1, ..., l_e) of linear forms over variables x_1, ..., x_n is
//! identified with the e x n matrix whose i-th column holds the x_i
//! coefficients of the entries. The pencil of a two-row matrix X is A + vB
//! with A, B the matrices of the two rows.

mod normal_form;
mod section;

pub use normal_form::kw_normal_form;
pub use section::{section, SectionError};

use crate::matrix::QMatrix;
use crate::rational::Rational;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PencilError {
    #[error("the two rows are linearly dependent; the determinantal ideal of 2-minors is zero")]
    DegeneratePencil,
    #[error("the eigenvalue polynomial of the regular part has a non-linear irreducible factor over Q")]
    IrrationalEigenvalues,
    #[error("a nonzero vector lies in the kernel of both pencil matrices (a variable direction unused by the matrix); such inputs are not supported")]
    FreeVariable,
    #[error("internal reduction failure: {0}")]
    Internal(String),
}

/// A linear form as a coefficient vector over an ambient variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn zero(n: usize) -> Self {
        LinearForm {
            coeffs: vec![Rational::zero(); n],
        }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut f = LinearForm::zero(n);
        f.coeffs[i] = Rational::one();
        f
    }

    pub fn scaled_unit(n: usize, i: usize, c: Rational) -> Self {
        let mut f = LinearForm::zero(n);
        f.coeffs[i] = c;
        f
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }
}

/// A 2 x e matrix of linear forms over a named variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFormMatrix {
    pub variables: Vec<String>,
    /// Two rows of e entries each.
    pub rows: [Vec<LinearForm>; 2],
}

impl LinearFormMatrix {
    pub fn new(variables: Vec<String>, rows: [Vec<LinearForm>; 2]) -> Self {
        assert!(!rows[0].is_empty(), "a matrix of linear forms needs e >= 1");
        assert_eq!(rows[0].len(), rows[1].len());
        let n = variables.len();
        for row in &rows {
            for f in row {
                assert_eq!(f.coeffs.len(), n, "form length must match variable count");
            }
        }
        LinearFormMatrix { variables, rows }
    }

    pub fn num_cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    /// The i-th column of the row matrix holds the x_i coefficients.
    pub fn to_pencil(&self) -> Pencil {
        let e = self.num_cols();
        let n = self.num_vars();
        let a = QMatrix::from_fn(e, n, |j, i| self.rows[0][j].coeffs[i].clone());
        let b = QMatrix::from_fn(e, n, |j, i| self.rows[1][j].coeffs[i].clone());
        Pencil { a, b }
    }

    /// Entry as a display string, for reports.
    pub fn entry_string(&self, row: usize, col: usize) -> String {
        let f = &self.rows[row][col];
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in f.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = &self.variables[i];
            if c.is_one() {
                parts.push(if parts.is_empty() {
                    name.clone()
                } else {
                    format!("+{}", name)
                });
            } else if (-c).is_one() {
                parts.push(format!("-{}", name));
            } else if c.is_negative() {
                parts.push(format!("{}{}", c, name));
            } else if parts.is_empty() {
                parts.push(format!("{}{}", c, name));
            } else {
                parts.push(format!("+{}{}", c, name));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.concat()
        }
    }
}

/// The matrix pencil A + vB of a two-row linear-form matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    pub a: QMatrix,
    pub b: QMatrix,
}

impl Pencil {
    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    pub fn new(a: QMatrix, b: QMatrix) -> Self {
        assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
        Pencil { a, b }
    }

    pub fn eval(&self, v: &Rational) -> QMatrix {
        self.a.add(&self.b.scale(v))
    }

    pub fn transpose(&self) -> Pencil {
        Pencil {
            a: self.a.transpose(),
            b: self.b.transpose(),
        }
    }

    /// Rank over the rational function field Q(v), by exact evaluation at
    /// min(e, n) + 1 distinct points: every nonzero minor, as a polynomial in
    /// v, has degree at most min(e, n), so some sample point misses its roots.
    pub fn rank(&self) -> usize {
        let bound = self.rows().min(self.cols());
        let mut best = 0usize;
        for k in 0..=bound as i64 {
            let r = self.eval(&Rational::from_int(k)).rank();
            best = best.max(r);
            if best == bound {
                break;
            }
        }
        best
    }
}

/// One block of a Kronecker-Weierstrass normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KWBlock {
    /// 2 x m block on m-1 variables; length 1 is a zero column with no variables.
    Nilpotent { length: usize },
    /// 2 x n block on n+1 variables.
    Scroll { length: usize },
    /// 2 x p block on p variables with an eigenvalue.
    Jordan { length: usize, eigenvalue: Rational },
}

impl KWBlock {
    pub fn length(&self) -> usize {
        match self {
            KWBlock::Nilpotent { length }
            | KWBlock::Scroll { length }
            | KWBlock::Jordan { length, .. } => *length,
        }
    }

    /// Number of matrix columns the block occupies.
    pub fn width(&self) -> usize {
        self.length()
    }

    /// Number of fresh variables the block introduces.
    pub fn var_count(&self) -> usize {
        match self {
            KWBlock::Nilpotent { length } => length - 1,
            KWBlock::Scroll { length } => length + 1,
            KWBlock::Jordan { length, .. } => *length,
        }
    }

    fn order_key(&self) -> (u8, Option<Rational>, i64) {
        match self {
            KWBlock::Nilpotent { length } => (0, None, *length as i64),
            KWBlock::Scroll { length } => (1, None, *length as i64),
            KWBlock::Jordan { length, eigenvalue } => {
                // Within an eigenvalue group, lengths run descending.
                (2, Some(eigenvalue.clone()), -(*length as i64))
            }
        }
    }
}

impl fmt::Display for KWBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KWBlock::Nilpotent { length } => write!(f, "N:{}", length),
            KWBlock::Scroll { length } => write!(f, "S:{}", length),
            KWBlock::Jordan { length, eigenvalue } => write!(f, "J:({},{})", length, eigenvalue),
        }
    }
}

/// An ordered list of blocks in the canonical length-sequence order:
/// nilpotent lengths ascending, scroll lengths ascending, then Jordan blocks
/// grouped by eigenvalue (ascending) with lengths descending inside a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KWForm {
    pub blocks: Vec<KWBlock>,
}

impl KWForm {
    pub fn new(mut blocks: Vec<KWBlock>) -> Self {
        blocks.sort_by(|x, y| x.order_key().cmp(&y.order_key()));
        KWForm { blocks }
    }

    pub fn is_canonical(&self) -> bool {
        self.blocks
            .windows(2)
            .all(|w| w[0].order_key() <= w[1].order_key())
    }

    pub fn num_vars(&self) -> usize {
        self.blocks.iter().map(KWBlock::var_count).sum()
    }

    pub fn num_cols(&self) -> usize {
        self.blocks.iter().map(KWBlock::width).sum()
    }

    pub fn nilpotent_lengths(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .filter_map(|b| match b {
                KWBlock::Nilpotent { length } => Some(*length),
                _ => None,
            })
            .collect()
    }

    pub fn scroll_lengths(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .filter_map(|b| match b {
                KWBlock::Scroll { length } => Some(*length),
                _ => None,
            })
            .collect()
    }

    /// Jordan data grouped by eigenvalue, eigenvalues ascending, lengths
    /// descending inside each group.
    pub fn jordan_groups(&self) -> Vec<(Rational, Vec<usize>)> {
        let mut groups: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
        for b in &self.blocks {
            if let KWBlock::Jordan { length, eigenvalue } = b {
                groups.entry(eigenvalue.clone()).or_default().push(*length);
            }
        }
        groups
            .into_iter()
            .map(|(ev, mut lens)| {
                lens.sort_by(|a, b| b.cmp(a));
                (ev, lens)
            })
            .collect()
    }

    /// Multiset equality of blocks (kinds, lengths, eigenvalues).
    pub fn same_blocks(&self, other: &KWForm) -> bool {
        let key = |f: &KWForm| {
            let mut v: Vec<(u8, Option<Rational>, i64)> =
                f.blocks.iter().map(|b| b.order_key()).collect();
            v.sort();
            v
        };
        key(self) == key(other)
    }

    /// Canonical fresh variable names, per block, in block order.
    ///
    /// Single blocks of a kind use bare names (x1..., y1..., z1...); multiple
    /// blocks carry a block index. Jordan names carry the eigenvalue-group
    /// index and the block index inside the group once either is ambiguous.
    pub fn variable_names(&self) -> Vec<String> {
        let nil_count = self.nilpotent_lengths().iter().filter(|&&m| m >= 2).count();
        let scr_count = self.scroll_lengths().len();
        let groups = self.jordan_groups();
        let jordan_simple = groups.len() == 1 && groups[0].1.len() == 1;

        let mut names = Vec::new();
        let mut nil_idx = 0usize;
        let mut scr_idx = 0usize;
        // (group index, block-within-group index) for Jordan blocks as ordered.
        let mut seen_groups: Vec<Rational> = Vec::new();
        let mut within: BTreeMap<usize, usize> = BTreeMap::new();
        for b in &self.blocks {
            match b {
                KWBlock::Nilpotent { length } => {
                    if *length >= 2 {
                        nil_idx += 1;
                        for r in 1..*length {
                            names.push(if nil_count == 1 {
                                format!("x{}", r)
                            } else {
                                format!("x{}_{}", nil_idx, r)
                            });
                        }
                    }
                }
                KWBlock::Scroll { length } => {
                    scr_idx += 1;
                    for s in 1..=length + 1 {
                        names.push(if scr_count == 1 {
                            format!("y{}", s)
                        } else {
                            format!("y{}_{}", scr_idx, s)
                        });
                    }
                }
                KWBlock::Jordan { length, eigenvalue } => {
                    let gi = match seen_groups.iter().position(|ev| ev == eigenvalue) {
                        Some(p) => p,
                        None => {
                            seen_groups.push(eigenvalue.clone());
                            seen_groups.len() - 1
                        }
                    };
                    let bi = within.entry(gi).or_insert(0);
                    *bi += 1;
                    for r in 1..=*length {
                        names.push(if jordan_simple {
                            format!("z{}", r)
                        } else {
                            format!("z{}_{}_{}", gi + 1, bi, r)
                        });
                    }
                }
            }
        }
        names
    }

    /// Emits the concatenated canonical matrix displays over fresh variables.
    pub fn to_matrix(&self) -> LinearFormMatrix {
        assert!(!self.blocks.is_empty(), "empty block list");
        let names = self.variable_names();
        let n = names.len();
        let mut row0 = Vec::new();
        let mut row1 = Vec::new();
        let mut var_off = 0usize;
        for b in &self.blocks {
            match b {
                KWBlock::Nilpotent { length } => {
                    let m = *length;
                    // (0, x1, ..., x_{m-1} / x1, ..., x_{m-1}, 0)
                    for c in 0..m {
                        row0.push(if c == 0 {
                            LinearForm::zero(n)
                        } else {
                            LinearForm::unit(n, var_off + c - 1)
                        });
                        row1.push(if c == m - 1 {
                            LinearForm::zero(n)
                        } else {
                            LinearForm::unit(n, var_off + c)
                        });
                    }
                    var_off += m - 1;
                }
                KWBlock::Scroll { length } => {
                    let nn = *length;
                    // (y1, ..., yn / y2, ..., y_{n+1})
                    for c in 0..nn {
                        row0.push(LinearForm::unit(n, var_off + c));
                        row1.push(LinearForm::unit(n, var_off + c + 1));
                    }
                    var_off += nn + 1;
                }
                KWBlock::Jordan { length, eigenvalue } => {
                    let p = *length;
                    // (z1, ..., zp / z2 + l z1, ..., l zp)
                    for c in 0..p {
                        row0.push(LinearForm::unit(n, var_off + c));
                        let mut f = LinearForm::scaled_unit(n, var_off + c, eigenvalue.clone());
                        if c + 1 < p {
                            f.coeffs[var_off + c + 1] = Rational::one();
                        }
                        row1.push(f);
                    }
                    var_off += p;
                }
            }
        }
        LinearFormMatrix::new(names, [row0, row1])
    }

    /// The canonical block-diagonal pencil (A, B) of this form.
    pub fn canonical_pencil(&self) -> Pencil {
        let mut ablocks = Vec::new();
        let mut bblocks = Vec::new();
        for blk in &self.blocks {
            match blk {
                KWBlock::Nilpotent { length } => {
                    let m = *length;
                    // Transposed bidiagonal block, m rows, m-1 columns.
                    let mut a = QMatrix::zeros(m, m - 1);
                    let mut b = QMatrix::zeros(m, m - 1);
                    for i in 0..m - 1 {
                        a[(i, i)] = Rational::one();
                        b[(i + 1, i)] = Rational::one();
                    }
                    ablocks.push(a);
                    bblocks.push(b);
                }
                KWBlock::Scroll { length } => {
                    let nn = *length;
                    let mut a = QMatrix::zeros(nn, nn + 1);
                    let mut b = QMatrix::zeros(nn, nn + 1);
                    for i in 0..nn {
                        a[(i, i)] = Rational::one();
                        b[(i, i + 1)] = Rational::one();
                    }
                    ablocks.push(a);
                    bblocks.push(b);
                }
                KWBlock::Jordan { length, eigenvalue } => {
                    let p = *length;
                    let a = QMatrix::identity(p);
                    let mut b = QMatrix::zeros(p, p);
                    for i in 0..p {
                        b[(i, i)] = eigenvalue.clone();
                        if i + 1 < p {
                            b[(i, i + 1)] = Rational::one();
                        }
                    }
                    ablocks.push(a);
                    bblocks.push(b);
                }
            }
        }
        Pencil {
            a: QMatrix::block_diag(&ablocks),
            b: QMatrix::block_diag(&bblocks),
        }
    }
}

impl fmt::Display for KWForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Witness for strict equivalence: C (A_m + v B_m) C' equals the canonical
/// block pencil exactly, where (A_m, B_m) is the `row_mix` change of basis of
/// the pencil's two-dimensional span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    /// Invertible 2x2 basis change of span{A, B}; identity when not needed.
    pub row_mix: QMatrix,
    pub c: QMatrix,
    pub c_prime: QMatrix,
}

impl EquivalenceCertificate {
    pub fn mixed_pencil(&self, p: &Pencil) -> Pencil {
        let a = p
            .a
            .scale(&self.row_mix[(0, 0)])
            .add(&p.b.scale(&self.row_mix[(0, 1)]));
        let b = p
            .a
            .scale(&self.row_mix[(1, 0)])
            .add(&p.b.scale(&self.row_mix[(1, 1)]));
        Pencil { a, b }
    }

    pub fn is_trivial_mix(&self) -> bool {
        self.row_mix == QMatrix::identity(2)
    }
}

/// Exact post-hoc check of a normal-form certificate: both transformation
/// matrices invert, the row mix is invertible, the block list is canonically
/// ordered, and C (A_m + v B_m) C' equals the canonical pencil of `form`
/// coefficientwise in v.
pub fn verify_certificate(p: &Pencil, form: &KWForm, cert: &EquivalenceCertificate) -> bool {
    if !form.is_canonical() {
        return false;
    }
    if cert.row_mix.rows() != 2 || cert.row_mix.cols() != 2 || !cert.row_mix.is_invertible() {
        return false;
    }
    if !cert.c.is_invertible() || !cert.c_prime.is_invertible() {
        return false;
    }
    let mixed = cert.mixed_pencil(p);
    let canon = form.canonical_pencil();
    if canon.rows() != mixed.rows() || canon.cols() != mixed.cols() {
        return false;
    }
    let ca = cert.c.mul(&mixed.a).mul(&cert.c_prime);
    let cb = cert.c.mul(&mixed.b).mul(&cert.c_prime);
    ca == canon.a && cb == canon.b
}

/// Searches for s+1 linearly independent vectors w_0, ..., w_s with
/// A w_0 = 0, B w_{i-1} = A w_i, B w_s = 0, solving the stacked linear system.
pub fn scroll_chain(p: &Pencil, s: usize) -> Option<Vec<Vec<Rational>>> {
    let kernel = chain_kernel_basis(p, s);
    if kernel.is_empty() {
        return None;
    }
    let n = p.cols();
    let split = |v: &[Rational]| -> Vec<Vec<Rational>> {
        (0..=s).map(|i| v[i * n..(i + 1) * n].to_vec()).collect()
    };
    let independent = |ws: &[Vec<Rational>]| QMatrix::from_cols(ws).rank() == s + 1;
    for v in &kernel {
        let ws = split(v);
        if independent(&ws) {
            return Some(ws);
        }
    }
    // Independence is a generic condition on the kernel: scan small integer
    // combinations of basis vectors deterministically.
    let dim = kernel.len();
    let mut combos: Vec<Vec<i64>> = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for (ci, cj) in [(1, 1), (1, -1), (1, 2), (2, 1)] {
                let mut c = vec![0i64; dim];
                c[i] = ci;
                c[j] = cj;
                combos.push(c);
            }
        }
    }
    let mut counter = 1u64;
    for _ in 0..256 {
        // Simple deterministic LCG over small coefficients.
        counter = counter.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut c = vec![0i64; dim];
        let mut st = counter;
        for ci in c.iter_mut() {
            st = st.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            *ci = ((st >> 33) % 7) as i64 - 3;
        }
        combos.push(c);
    }
    for c in combos {
        let mut v = vec![Rational::zero(); kernel[0].len()];
        for (ci, k) in c.iter().zip(&kernel) {
            if *ci == 0 {
                continue;
            }
            let ci = Rational::from_int(*ci);
            for (slot, kv) in v.iter_mut().zip(k) {
                let t = &ci * kv;
                *slot += &t;
            }
        }
        if v.iter().all(Rational::is_zero) {
            continue;
        }
        let ws = split(&v);
        if independent(&ws) {
            return Some(ws);
        }
    }
    None
}

/// Kernel basis of the stacked chain system for fixed s (vectors of length
/// (s+1) * n, blocks w_0, ..., w_s).
pub(crate) fn chain_kernel_basis(p: &Pencil, s: usize) -> Vec<Vec<Rational>> {
    let (e, n) = (p.rows(), p.cols());
    let mut sys = QMatrix::zeros((s + 2) * e, (s + 1) * n);
    // A w_0 = 0
    sys.set_block(0, 0, &p.a);
    // B w_i - A w_{i+1} = 0
    for i in 0..s {
        sys.set_block((i + 1) * e, i * n, &p.b);
        sys.set_block((i + 1) * e, (i + 1) * n, &p.a.scale(&Rational::from_int(-1)));
    }
    // B w_s = 0
    sys.set_block((s + 1) * e, s * n, &p.b);
    sys.rref().kernel
}
