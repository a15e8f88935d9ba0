//! The non-Koszulness witness through monoid combinatorics: the affine
//! monoid of a two-block scroll, the divisibility interval below a target
//! element, the order complex of its chains together with the subcomplex of
//! chains with a gap in a designated monomial ideal, and exact relative
//! simplicial homology over Q. The Herzog-Reiner-Welker formula turns the
//! first relative homology into a third multigraded Betti number of the
//! residue field over the section ring.

use crate::rational::Rational;
use crate::ringmodel::RrefBasis;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("complex exceeds the configured bounds: {0}")]
pub struct HomologyBoundsError(pub String);

/// Exponent vector (x, y, s1, s2) of a monomial in the ambient lattice.
pub type MonoidElement = [u32; 4];

pub fn element_degree(e: &MonoidElement) -> u32 {
    e[2] + e[3]
}

pub fn format_element(e: &MonoidElement) -> String {
    let names = ["x", "y", "s1", "s2"];
    let mut out = String::new();
    for (i, &p) in e.iter().enumerate() {
        if p == 0 {
            continue;
        }
        if p == 1 {
            out.push_str(names[i]);
        } else {
            out.push_str(&format!("{}^{}", names[i], p));
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

/// The monoid of the scroll of type (m, n): generated by x^{m-i} y^i s1 and
/// x^{n-i} y^i s2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScrollMonoid {
    pub m: u32,
    pub n: u32,
}

impl ScrollMonoid {
    pub fn new(m: u32, n: u32) -> Self {
        assert!(m >= 1 && n >= 1);
        ScrollMonoid { m, n }
    }

    pub fn generators(&self) -> Vec<MonoidElement> {
        let mut gens = Vec::new();
        for i in 0..=self.m {
            gens.push([self.m - i, i, 1, 0]);
        }
        for i in 0..=self.n {
            gens.push([self.n - i, i, 0, 1]);
        }
        gens
    }

    /// Closed-form membership: the x- and y-exponents must total exactly
    /// p*m + q*n, and the s-components pick how many generators of each block
    /// are used; any split of the total between x and y is realizable.
    pub fn contains(&self, e: &MonoidElement) -> bool {
        u64::from(e[0]) + u64::from(e[1])
            == u64::from(e[2]) * u64::from(self.m) + u64::from(e[3]) * u64::from(self.n)
    }

    fn sub(&self, a: &MonoidElement, b: &MonoidElement) -> Option<MonoidElement> {
        let mut out = [0u32; 4];
        for i in 0..4 {
            out[i] = a[i].checked_sub(b[i])?;
        }
        Some(out)
    }

    /// Divisibility inside the monoid: b - a is again a member.
    pub fn divides(&self, a: &MonoidElement, b: &MonoidElement) -> bool {
        match self.sub(b, a) {
            Some(diff) => self.contains(&diff),
            None => false,
        }
    }
}

/// The target element x^{an} y^m s1 s2^a with a = ceil(m/n); its degree is
/// a + 1.
pub fn target_mu(m: u32, n: u32) -> MonoidElement {
    let a = m.div_ceil(n);
    [a * n, m, 1, a]
}

/// All monoid elements strictly between 0 and mu in the divisibility order.
pub fn interval_elements(monoid: &ScrollMonoid, mu: &MonoidElement) -> Vec<MonoidElement> {
    assert!(monoid.contains(mu), "target must lie in the monoid");
    let mut out = Vec::new();
    for p in 0..=mu[2] {
        for q in 0..=mu[3] {
            let total = u64::from(p) * u64::from(monoid.m) + u64::from(q) * u64::from(monoid.n);
            for g in 0..=mu[0] {
                let h = match total.checked_sub(u64::from(g)) {
                    Some(h) if h <= u64::from(mu[1]) => h as u32,
                    _ => continue,
                };
                let e = [g, h, p, q];
                if e == [0, 0, 0, 0] || e == *mu {
                    continue;
                }
                // Componentwise bounds suffice for divisibility on both
                // sides: the degree identity carries over to differences.
                out.push(e);
            }
        }
    }
    out.sort_by_key(|e| (element_degree(e), *e));
    out
}

/// One face of the order complex: a chain of interval elements, flagged when
/// it belongs to the subcomplex.
#[derive(Debug, Clone)]
pub struct Face {
    pub verts: Vec<usize>,
    pub in_sub: bool,
}

/// The order complex of chains in (0, mu) together with the subcomplex of
/// chains having a gap in the monomial ideal generated by x^m s1 and y^m s1;
/// the boundary conventions insert 0 below and mu above every chain. Faces of
/// dimension -1 (the empty chain) are included.
#[derive(Debug, Clone)]
pub struct OrderComplexPair {
    pub monoid: ScrollMonoid,
    pub mu: MonoidElement,
    pub vertices: Vec<MonoidElement>,
    /// faces_by_dim[k] holds the faces of dimension k - 1.
    pub faces_by_dim: Vec<Vec<Face>>,
}

pub fn build_pair(monoid: &ScrollMonoid, mu: &MonoidElement) -> OrderComplexPair {
    let vertices = interval_elements(monoid, mu);
    let nv = vertices.len();
    let ideal_gens = [[monoid.m, 0, 1, 0], [0, monoid.m, 1, 0]];
    let gap_in_ideal = |from: &MonoidElement, to: &MonoidElement| -> bool {
        let Some(diff) = monoid.sub(to, from) else {
            return false;
        };
        ideal_gens
            .iter()
            .any(|g| monoid.sub(&diff, g).is_some_and(|r| monoid.contains(&r)))
    };
    let chain_in_sub = |chain: &[usize]| -> bool {
        let zero = [0u32; 4];
        let mut prev = &zero;
        for &v in chain {
            if gap_in_ideal(prev, &vertices[v]) {
                return true;
            }
            prev = &vertices[v];
        }
        gap_in_ideal(prev, mu)
    };
    // Strict divisibility adjacency, respecting the sorted vertex order.
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for i in 0..nv {
        for j in i + 1..nv {
            if monoid.divides(&vertices[i], &vertices[j]) {
                above[i].push(j);
            }
        }
    }
    let mut faces_by_dim: Vec<Vec<Face>> = vec![Vec::new()];
    faces_by_dim[0].push(Face {
        verts: vec![],
        in_sub: chain_in_sub(&[]),
    });
    // Depth-first chain enumeration.
    let mut stack: Vec<Vec<usize>> = (0..nv).map(|v| vec![v]).collect();
    while let Some(chain) = stack.pop() {
        let dim = chain.len(); // index into faces_by_dim (dimension + 1)
        if faces_by_dim.len() <= dim {
            faces_by_dim.resize_with(dim + 1, Vec::new);
        }
        for &next in &above[*chain.last().unwrap()] {
            let mut longer = chain.clone();
            longer.push(next);
            stack.push(longer);
        }
        faces_by_dim[dim].push(Face {
            in_sub: chain_in_sub(&chain),
            verts: chain,
        });
    }
    for faces in faces_by_dim.iter_mut() {
        faces.sort_by(|a, b| a.verts.cmp(&b.verts));
    }
    OrderComplexPair {
        monoid: *monoid,
        mu: *mu,
        vertices,
        faces_by_dim,
    }
}

impl OrderComplexPair {
    /// Faces of the full complex at the given dimension (-1 is the empty
    /// chain).
    pub fn faces(&self, dim: i64) -> &[Face] {
        let idx = (dim + 1) as usize;
        self.faces_by_dim
            .get(idx)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn max_dim(&self) -> i64 {
        self.faces_by_dim.len() as i64 - 2
    }

    /// Number of faces of the subcomplex, per dimension (for reports).
    pub fn sub_face_count(&self) -> usize {
        self.faces_by_dim
            .iter()
            .map(|fs| fs.iter().filter(|f| f.in_sub).count())
            .sum()
    }

    /// Facets (maximal faces) of the subcomplex, split into those whose
    /// distinguishing gap is divisible by y^m s1 (first type) and by x^m s1
    /// (second type).
    pub fn subcomplex_facets(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut sub_faces: Vec<&Face> = Vec::new();
        for fs in &self.faces_by_dim {
            for f in fs {
                if f.in_sub {
                    sub_faces.push(f);
                }
            }
        }
        let is_subset = |a: &[usize], b: &[usize]| a.iter().all(|v| b.contains(v));
        let mut first = Vec::new();
        let mut second = Vec::new();
        for f in &sub_faces {
            let maximal = !sub_faces
                .iter()
                .any(|g| g.verts.len() > f.verts.len() && is_subset(&f.verts, &g.verts));
            if !maximal {
                continue;
            }
            if self.has_gap_divisible_by(&f.verts, &[0, self.monoid.m, 1, 0]) {
                first.push(f.verts.clone());
            } else {
                second.push(f.verts.clone());
            }
        }
        (first, second)
    }

    fn has_gap_divisible_by(&self, chain: &[usize], gen: &MonoidElement) -> bool {
        let zero = [0u32; 4];
        let mut prev = zero;
        let monoid = &self.monoid;
        for &v in chain {
            if let Some(diff) = monoid.sub(&self.vertices[v], &prev) {
                if monoid.sub(&diff, gen).is_some_and(|r| monoid.contains(&r)) {
                    return true;
                }
            }
            prev = self.vertices[v];
        }
        if let Some(diff) = monoid.sub(&self.mu, &prev) {
            if monoid.sub(&diff, gen).is_some_and(|r| monoid.contains(&r)) {
                return true;
            }
        }
        false
    }

    /// Relative chain-group dimension at `dim`: faces of the big complex not
    /// in the subcomplex.
    pub fn relative_faces(&self, dim: i64) -> Vec<&Face> {
        self.faces(dim).iter().filter(|f| !f.in_sub).collect()
    }
}

/// Number of connected components of the 1-skeleton of either the subcomplex
/// (`sub = true`) or the full complex, restricted to vertices appearing in at
/// least one face.
pub fn connected_components(pair: &OrderComplexPair, sub: bool) -> usize {
    let keep = |f: &Face| !sub || f.in_sub;
    let mut present: Vec<bool> = vec![false; pair.vertices.len()];
    for fs in &pair.faces_by_dim {
        for f in fs {
            if keep(f) {
                for &v in &f.verts {
                    present[v] = true;
                }
            }
        }
    }
    let mut parent: Vec<usize> = (0..pair.vertices.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for f in pair.faces(1) {
        if keep(f) {
            let a = find(&mut parent, f.verts[0]);
            let b = find(&mut parent, f.verts[1]);
            parent[a] = b;
        }
    }
    let mut roots: Vec<usize> = (0..pair.vertices.len())
        .filter(|&v| present[v])
        .map(|v| find(&mut parent, v))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Dimension over Q of the reduced relative simplicial homology of the pair
/// in homological degree i, via boundary-matrix ranks of the relative chain
/// complex (the empty chain participates in degree -1).
pub fn relative_homology_dim(pair: &OrderComplexPair, i: i64) -> usize {
    let dim_c = |k: i64| pair.relative_faces(k).len();
    let rank = |k: i64| relative_boundary_rank(pair, k);
    let ci = dim_c(i);
    if ci == 0 {
        return 0;
    }
    ci - rank(i) - rank(i + 1)
}

/// Rank of the boundary map C_k -> C_{k-1} of the relative complex.
fn relative_boundary_rank(pair: &OrderComplexPair, k: i64) -> usize {
    let src = pair.relative_faces(k);
    if src.is_empty() {
        return 0;
    }
    let tgt = pair.relative_faces(k - 1);
    if tgt.is_empty() {
        return 0;
    }
    let tgt_index: HashMap<&[usize], usize> = tgt
        .iter()
        .enumerate()
        .map(|(i, f)| (f.verts.as_slice(), i))
        .collect();
    let mut basis = RrefBasis::new(tgt.len());
    for f in &src {
        let mut row: Vec<(usize, Rational)> = Vec::new();
        for drop in 0..f.verts.len() {
            let mut face: Vec<usize> = f.verts.clone();
            face.remove(drop);
            if let Some(&t) = tgt_index.get(face.as_slice()) {
                let sign = if drop % 2 == 0 {
                    Rational::one()
                } else {
                    Rational::from_int(-1)
                };
                row.push((t, sign));
            }
        }
        row.sort_by_key(|(t, _)| *t);
        basis.insert(row);
    }
    basis.dim()
}

/// Size caps for the witness pipeline.
#[derive(Debug, Clone, Copy)]
pub struct HomologyBounds {
    pub max_target_degree: u32,
    pub max_interval: usize,
}

impl Default for HomologyBounds {
    fn default() -> Self {
        HomologyBounds {
            max_target_degree: 6,
            max_interval: 200,
        }
    }
}

/// The multigraded Betti number beta^T_{i, mu}(k) of the residue field over
/// the section ring T, through the reduced relative homology in degree i - 2.
pub fn betti_hrw(
    monoid: &ScrollMonoid,
    mu: &MonoidElement,
    i: u32,
    bounds: &HomologyBounds,
) -> Result<usize, HomologyBoundsError> {
    assert!(i >= 2, "the formula applies from homological degree 2 on");
    if element_degree(mu) > bounds.max_target_degree {
        return Err(HomologyBoundsError(format!(
            "target degree {} exceeds cap {}",
            element_degree(mu),
            bounds.max_target_degree
        )));
    }
    let n_interval = interval_elements(monoid, mu).len();
    if n_interval > bounds.max_interval {
        return Err(HomologyBoundsError(format!(
            "interval has {} elements, cap {}",
            n_interval, bounds.max_interval
        )));
    }
    let pair = build_pair(monoid, mu);
    Ok(relative_homology_dim(&pair, i as i64 - 2))
}

/// Report of the full witness computation for the scroll of type (m, n).
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub m: u32,
    pub n: u32,
    pub a: u32,
    pub mu: MonoidElement,
    pub interval_size: usize,
    pub components_full: usize,
    pub components_sub: usize,
    pub betti3: usize,
    pub witness: bool,
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "type ({},{}): mu = {}, interval {}, components {}, beta3 = {}, witness {}",
            self.m,
            self.n,
            format_element(&self.mu),
            self.interval_size,
            self.components_sub,
            self.betti3,
            self.witness
        )
    }
}

/// Establishes non-Koszulness of the section ring of the (m, n) scroll by
/// the first and last coordinate of its long block: true exactly when the
/// third Betti number at the target multidegree is nonzero.
pub fn nonkoszul_witness(
    m: u32,
    n: u32,
    bounds: &HomologyBounds,
) -> Result<WitnessReport, HomologyBoundsError> {
    assert!(m >= 2 * n + 1, "the witness target needs m >= 2n + 1");
    let monoid = ScrollMonoid::new(m, n);
    let mu = target_mu(m, n);
    let betti3 = betti_hrw(&monoid, &mu, 3, bounds)?;
    let pair = build_pair(&monoid, &mu);
    Ok(WitnessReport {
        m,
        n,
        a: m.div_ceil(n),
        mu,
        interval_size: pair.vertices.len(),
        components_full: connected_components(&pair, false),
        components_sub: connected_components(&pair, true),
        betti3,
        witness: betti3 >= 1,
    })
}
