//! Degree-reverse-lexicographic term orders and a degreewise Groebner-basis
//! check: the 2-minors generate the initial ideal up to a degree bound
//! exactly when the monomial ideal of their leading terms has the same
//! dimension as the initial module of the ideal in every checked degree.

use super::pieces::{poly_to_vec, RrefBasis};
use super::{monomial_index_map, monomials, two_minors, GeneratorSet, Poly, PolyRing};
use crate::pencil::{KWBlock, KWForm, LinearFormMatrix};
use std::cmp::Ordering;
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermOrderError {
    #[error("the block form has a nilpotent block; no Groebner order is provided for it")]
    HasNilpotentBlock,
}

/// Degree revlex order induced by a significance permutation of variables:
/// `perm[0]` is the most significant variable index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    pub perm: Vec<usize>,
}

impl TermOrder {
    pub fn natural(n: usize) -> Self {
        TermOrder {
            perm: (0..n).collect(),
        }
    }

    /// Compares in degrevlex: higher degree wins; on ties the monomial with
    /// the smaller exponent at the least significant differing variable is
    /// larger.
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for &i in self.perm.iter().rev() {
            if a[i] != b[i] {
                // Smaller exponent on the less significant end wins.
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    }

    pub fn leading_monomial<'p>(&self, p: &'p Poly) -> Option<&'p [u32]> {
        p.terms
            .keys()
            .max_by(|a, b| self.cmp(a, b))
            .map(|e| e.as_slice())
    }
}

/// The variable order for block forms without nilpotent blocks: variables in
/// canonical block order are decreasing along the first row and the last
/// variable of each block exceeds the first variable of the next block, so
/// the canonical naming order itself realizes the required order.
pub fn scroll_term_order(form: &KWForm) -> Result<TermOrder, TermOrderError> {
    if form
        .blocks
        .iter()
        .any(|b| matches!(b, KWBlock::Nilpotent { .. }))
    {
        return Err(TermOrderError::HasNilpotentBlock);
    }
    Ok(TermOrder::natural(form.num_vars()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerVerdict {
    pub ok: bool,
    pub checked_to_degree: u32,
    pub first_failure: Option<u32>,
}

/// Compares, degree by degree up to `dmax`, the initial module of the ideal
/// of 2-minors with the monomial ideal generated by the minors' leading
/// terms. Both are computed exactly; equality of dimensions decides since the
/// monomial side always sits inside the initial module.
pub fn groebner_check_degreewise(
    x: &LinearFormMatrix,
    ord: &TermOrder,
    dmax: u32,
) -> GroebnerVerdict {
    let ring = PolyRing::new(x.variables.clone());
    let gens = two_minors(x);
    for d in 1..=dmax {
        let lead_dim = initial_module_dim(&ring, &gens, ord, d);
        let mono_dim = leading_term_ideal_dim(&ring, &gens, ord, d);
        if lead_dim != mono_dim {
            return GroebnerVerdict {
                ok: false,
                checked_to_degree: dmax,
                first_failure: Some(d),
            };
        }
    }
    GroebnerVerdict {
        ok: true,
        checked_to_degree: dmax,
        first_failure: None,
    }
}

/// Degree-d dimensions of (initial module of the ideal, monomial ideal of
/// the generators' leading terms); the second never exceeds the first.
pub fn initial_dims(
    ring: &PolyRing,
    gens: &GeneratorSet,
    ord: &TermOrder,
    d: u32,
) -> (usize, usize) {
    (
        initial_module_dim(ring, gens, ord, d),
        leading_term_ideal_dim(ring, gens, ord, d),
    )
}

/// dim of in(I)_d: pivots of the echelon basis of I_d taken with columns
/// sorted descending in the term order.
fn initial_module_dim(ring: &PolyRing, gens: &GeneratorSet, ord: &TermOrder, d: u32) -> usize {
    let n = ring.num_vars();
    let mons = monomials(n, d);
    let mut order: Vec<usize> = (0..mons.len()).collect();
    order.sort_by(|&i, &j| ord.cmp(&mons[j], &mons[i]));
    let mut pos = vec![0usize; mons.len()];
    for (rank, &i) in order.iter().enumerate() {
        pos[i] = rank;
    }
    let idx = monomial_index_map(&mons);
    let mut basis = RrefBasis::new(mons.len());
    for g in &gens.gens {
        let dg = g.homogeneous_degree().expect("homogeneous");
        if dg > d {
            continue;
        }
        for m in monomials(n, d - dg) {
            let prod = g.mul_monomial(&m);
            let mut v: Vec<(usize, crate::rational::Rational)> = poly_to_vec(&prod, &idx)
                .into_iter()
                .map(|(i, c)| (pos[i], c))
                .collect();
            v.sort_by_key(|(i, _)| *i);
            basis.insert(v);
        }
    }
    basis.dim()
}

/// Degree-d dimension of the monomial ideal generated by the leading
/// monomials of the generators.
fn leading_term_ideal_dim(ring: &PolyRing, gens: &GeneratorSet, ord: &TermOrder, d: u32) -> usize {
    let n = ring.num_vars();
    let mut set: HashSet<Vec<u32>> = HashSet::new();
    for g in &gens.gens {
        let dg = g.homogeneous_degree().expect("homogeneous");
        if dg > d {
            continue;
        }
        let lt = ord.leading_monomial(g).expect("nonzero generator");
        for m in monomials(n, d - dg) {
            set.insert(lt.iter().zip(&m).map(|(a, b)| a + b).collect());
        }
    }
    set.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    #[test]
    fn degrevlex_basics() {
        let ord = TermOrder::natural(3);
        // x0^2 > x0 x1 > x1^2 > x0 x2 > x1 x2 > x2^2 in degrevlex.
        let seq = [
            vec![2, 0, 0],
            vec![1, 1, 0],
            vec![0, 2, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![0, 0, 2],
        ];
        for w in seq.windows(2) {
            assert_eq!(ord.cmp(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn scroll_order_variables() {
        let form = KWForm::new(vec![KWBlock::Scroll { length: 2 }]);
        let ord = scroll_term_order(&form).unwrap();
        assert_eq!(ord.perm, vec![0, 1, 2]);
        let two = KWForm::new(vec![
            KWBlock::Scroll { length: 1 },
            KWBlock::Scroll { length: 1 },
        ]);
        assert_eq!(scroll_term_order(&two).unwrap().perm, vec![0, 1, 2, 3]);
        let nil = KWForm::new(vec![KWBlock::Nilpotent { length: 2 }]);
        assert_eq!(
            scroll_term_order(&nil),
            Err(TermOrderError::HasNilpotentBlock)
        );
    }

    #[test]
    fn segre_quadratic_groebner() {
        let form = KWForm::new(vec![
            KWBlock::Scroll { length: 1 },
            KWBlock::Scroll { length: 1 },
        ]);
        let x = form.to_matrix();
        let ord = scroll_term_order(&form).unwrap();
        let v = groebner_check_degreewise(&x, &ord, 4);
        assert!(v.ok, "{:?}", v);
    }

    #[test]
    fn scroll_with_jordan_groebner() {
        let form = KWForm::new(vec![
            KWBlock::Scroll { length: 1 },
            KWBlock::Jordan {
                length: 2,
                eigenvalue: Rational::zero(),
            },
        ]);
        let x = form.to_matrix();
        let ord = scroll_term_order(&form).unwrap();
        let v = groebner_check_degreewise(&x, &ord, 4);
        assert!(v.ok, "{:?}", v);
    }

    #[test]
    fn degree_one_vacuous() {
        let form = KWForm::new(vec![KWBlock::Scroll { length: 3 }]);
        let x = form.to_matrix();
        let ord = scroll_term_order(&form).unwrap();
        assert!(groebner_check_degreewise(&x, &ord, 1).ok);
    }
}
