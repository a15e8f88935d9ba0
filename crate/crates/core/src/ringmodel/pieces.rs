//! Graded pieces of ideals as canonical reduced echelon bases over the fixed
//! monomial order, plus membership and degreewise colon computations.

use super::{full_dim, monomial_index_map, monomials, GeneratorSet, Poly, PolyRing};
use crate::rational::Rational;

/// Sparse coefficient vector: (index, coefficient) pairs, ascending index,
/// all coefficients nonzero.
pub type SparseVec = Vec<(usize, Rational)>;

fn axpy(v: &mut SparseVec, c: &Rational, w: &SparseVec) {
    // v += c * w, merging sorted entry lists.
    let mut out: SparseVec = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        match (v.get(i), w.get(j)) {
            (Some((iv, cv)), Some((jw, cw))) => {
                if iv < jw {
                    out.push((*iv, cv.clone()));
                    i += 1;
                } else if jw < iv {
                    let val = c * cw;
                    if !val.is_zero() {
                        out.push((*jw, val));
                    }
                    j += 1;
                } else {
                    let val = cv + &(c * cw);
                    if !val.is_zero() {
                        out.push((*iv, val));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some((iv, cv)), None) => {
                out.push((*iv, cv.clone()));
                i += 1;
            }
            (None, Some((jw, cw))) => {
                let val = c * cw;
                if !val.is_zero() {
                    out.push((*jw, val));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    *v = out;
}

/// A row space in reduced echelon form over a fixed column count. Rows are
/// kept fully inter-reduced with unit pivots, so two builders over the same
/// columns are equal as subspaces exactly when their rows coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefBasis {
    pub ncols: usize,
    /// (pivot, row) sorted by pivot.
    pub rows: Vec<(usize, SparseVec)>,
}

impl RrefBasis {
    pub fn new(ncols: usize) -> Self {
        RrefBasis { ncols, rows: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    fn find(&self, pivot: usize) -> Option<usize> {
        self.rows.binary_search_by_key(&pivot, |(p, _)| *p).ok()
    }

    /// Reduces `v` against the basis without inserting.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut k = 0usize;
        while k < v.len() {
            let idx = v[k].0;
            if let Some(r) = self.find(idx) {
                let c = -&v[k].1;
                let row = self.rows[r].1.clone();
                axpy(&mut v, &c, &row);
                // Entries before position k are untouched: the subtracted row
                // starts at its pivot = idx.
            } else {
                k += 1;
            }
        }
        v
    }

    /// Inserts `v`; returns true when the span grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        let inv = v[0].1.recip();
        if !inv.is_one() {
            for (_, c) in v.iter_mut() {
                *c *= &inv;
            }
        }
        let pivot = v[0].0;
        // Back-reduce existing rows against the new pivot.
        for (_, row) in self.rows.iter_mut() {
            if let Ok(pos) = row.binary_search_by_key(&pivot, |(i, _)| *i) {
                let c = -&row[pos].1;
                axpy(row, &c, &v);
            }
        }
        let at = self
            .rows
            .binary_search_by_key(&pivot, |(p, _)| *p)
            .unwrap_err();
        self.rows.insert(at, (pivot, v));
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// The degree-d component of a graded ideal: an exact canonical basis over
/// the degree-d monomials of the ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: u32,
    pub basis: RrefBasis,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

pub(crate) fn poly_to_vec(p: &Poly, idx: &std::collections::HashMap<Vec<u32>, usize>) -> SparseVec {
    let mut v: SparseVec = p
        .terms
        .iter()
        .map(|(e, c)| (idx[e], c.clone()))
        .collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

/// Basis of span{ g * m : g generator, m monomial, deg(g m) = d }.
pub fn ideal_piece(ring: &PolyRing, gens: &GeneratorSet, d: u32) -> GradedPiece {
    let n = ring.num_vars();
    let mons = monomials(n, d);
    let idx = monomial_index_map(&mons);
    let mut basis = RrefBasis::new(mons.len());
    for g in &gens.gens {
        let dg = g.homogeneous_degree().expect("homogeneous generator");
        if dg > d {
            continue;
        }
        for m in monomials(n, d - dg) {
            let prod = g.mul_monomial(&m);
            basis.insert(poly_to_vec(&prod, &idx));
        }
    }
    GradedPiece { degree: d, basis }
}

/// dim (S/I)_d = C(n-1+d, d) - dim I_d.
pub fn hilbert_function(ring: &PolyRing, gens: &GeneratorSet, d: u32) -> usize {
    full_dim(ring.num_vars(), d) - ideal_piece(ring, gens, d).dim()
}

/// Exact membership of a homogeneous polynomial in the ideal.
pub fn membership(ring: &PolyRing, f: &Poly, gens: &GeneratorSet) -> bool {
    if f.is_zero() {
        return true;
    }
    let d = f.homogeneous_degree().expect("homogeneous input");
    let piece = ideal_piece(ring, gens, d);
    let mons = monomials(ring.num_vars(), d);
    let idx = monomial_index_map(&mons);
    piece.basis.contains(poly_to_vec(f, &idx))
}

/// Reduces a homogeneous polynomial modulo the span of a graded piece.
pub fn reduce_mod_piece(ring: &PolyRing, f: &Poly, piece: &GradedPiece) -> SparseVec {
    let mons = monomials(ring.num_vars(), piece.degree);
    let idx = monomial_index_map(&mons);
    piece.basis.reduce(poly_to_vec(f, &idx))
}

/// Degree-d piece of the colon ideal (J : f): all degree-d g with g f in
/// J_{d + deg f}, computed as the kernel of multiplication-by-f followed by
/// reduction modulo J.
pub fn colon_piece(ring: &PolyRing, j_gens: &GeneratorSet, f: &Poly, d: u32) -> GradedPiece {
    let df = f.homogeneous_degree().expect("homogeneous f");
    let target = ideal_piece(ring, j_gens, d + df);
    colon_piece_against(ring, &target, f, d)
}

/// Same as `colon_piece` with the degree-(d + deg f) piece of J precomputed.
pub fn colon_piece_against(
    ring: &PolyRing,
    target: &GradedPiece,
    f: &Poly,
    d: u32,
) -> GradedPiece {
    let n = ring.num_vars();
    let df = f.homogeneous_degree().expect("homogeneous f");
    assert_eq!(target.degree, d + df);
    let target_mons = monomials(n, d + df);
    let target_idx = monomial_index_map(&target_mons);
    let mult_mons = monomials(n, d);
    let offset = target_mons.len();

    // Rows [residual | unit multiplier]: rows whose pivot lands in the
    // multiplier half have zero residual, so their right halves are the
    // canonical reduced basis of the kernel.
    let mut big = RrefBasis::new(offset + mult_mons.len());
    for (i, m) in mult_mons.iter().enumerate() {
        let prod = f.mul_monomial(m);
        let mut row = target.basis.reduce(poly_to_vec(&prod, &target_idx));
        row.push((offset + i, Rational::one()));
        big.insert(row);
    }
    let mut basis = RrefBasis::new(mult_mons.len());
    for (p, row) in &big.rows {
        if *p >= offset {
            let shifted: SparseVec = row.iter().map(|(i, c)| (i - offset, c.clone())).collect();
            let pivot = shifted[0].0;
            basis.rows.push((pivot, shifted));
        }
    }
    basis.rows.sort_by_key(|(p, _)| *p);
    GradedPiece { degree: d, basis }
}

/// Outcome of a degreewise subspace comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColonVerdict {
    pub ok: bool,
    pub checked_to_degree: u32,
    pub first_failure: Option<u32>,
}

/// Checks (J : f)_d = L_d for 1 <= d <= dmax, where both sides are given by
/// generator sets that already include any ambient ideal.
pub fn colon_equals_linear(
    ring: &PolyRing,
    j_gens: &GeneratorSet,
    f: &Poly,
    l_gens: &GeneratorSet,
    dmax: u32,
) -> ColonVerdict {
    for d in 1..=dmax {
        let lhs = colon_piece(ring, j_gens, f, d);
        let rhs = ideal_piece(ring, l_gens, d);
        if lhs.basis != rhs.basis {
            return ColonVerdict {
                ok: false,
                checked_to_degree: dmax,
                first_failure: Some(d),
            };
        }
    }
    ColonVerdict {
        ok: true,
        checked_to_degree: dmax,
        first_failure: None,
    }
}
