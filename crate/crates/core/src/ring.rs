//! The graded coordinate ring of the plane in three variables: monomial
//! bases, homogeneous forms, projective points, and determinants of
//! matrices of forms.
//!
//! Monomials of degree d are ordered lexicographically descending on the
//! (x, y) exponents: x^d, x^{d-1}y, x^{d-1}z, x^{d-2}y^2, ... , z^d. Every
//! coefficient vector in the crate is indexed against this order.

use std::fmt;

use rand::RngCore;
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::linalg::{Matrix, Subspace};

pub const VARIABLES: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("projective point must have a nonzero coordinate")]
    ZeroPoint,
    #[error("degree grid admits no row/column splitting; determinant would not be homogeneous")]
    InconsistentDegrees,
    #[error("matrix of forms must be square and nonempty")]
    NonSquareGrid,
}

/// Dimension of the space of degree-d forms in three variables.
pub fn form_space_dim(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// Same as [`form_space_dim`] but zero for negative degrees.
pub fn form_space_dim_i(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        form_space_dim(d as usize)
    }
}

/// Position of x^a y^b z^(d-a-b) in the degree-d monomial order.
pub fn monomial_index(d: usize, a: usize, b: usize) -> usize {
    debug_assert!(a + b <= d);
    let k = d - a;
    k * (k + 1) / 2 + (k - b)
}

/// The ordered exponent triples of degree d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    degree: usize,
    exponents: Vec<[usize; 3]>,
}

impl MonomialBasis {
    pub fn new(degree: usize) -> Self {
        let mut exponents = Vec::with_capacity(form_space_dim(degree));
        for a in (0..=degree).rev() {
            for b in (0..=degree - a).rev() {
                exponents.push([a, b, degree - a - b]);
            }
        }
        Self { degree, exponents }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[[usize; 3]] {
        &self.exponents
    }

    pub fn index_of(&self, a: usize, b: usize) -> usize {
        monomial_index(self.degree, a, b)
    }
}

/// A homogeneous form of fixed degree, as a coefficient vector over the
/// degree's monomial basis. The zero form of any degree is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form<F: Field> {
    field: F,
    degree: usize,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Form<F> {
    pub fn zero(field: F, degree: usize) -> Self {
        let coeffs = vec![field.zero(); form_space_dim(degree)];
        Self { field, degree, coeffs }
    }

    pub fn from_coeffs(field: F, degree: usize, coeffs: Vec<F::Elem>) -> Self {
        assert_eq!(coeffs.len(), form_space_dim(degree), "coefficient length mismatch");
        Self { field, degree, coeffs }
    }

    pub fn constant(field: F, value: F::Elem) -> Self {
        Self { field, degree: 0, coeffs: vec![value] }
    }

    pub fn one(field: F) -> Self {
        let value = field.one();
        Self::constant(field, value)
    }

    /// The single monomial x^a y^b z^c with coefficient 1.
    pub fn monomial(field: F, exp: [usize; 3]) -> Self {
        let degree = exp[0] + exp[1] + exp[2];
        let mut form = Self::zero(field, degree);
        let idx = monomial_index(degree, exp[0], exp[1]);
        form.coeffs[idx] = form.field.one();
        form
    }

    pub fn random(field: &F, degree: usize, rng: &mut dyn RngCore) -> Result<Self, FieldError> {
        let coeffs = (0..form_space_dim(degree))
            .map(|_| field.random_scalar(rng))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { field: field.clone(), degree, coeffs })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, a: usize, b: usize) -> &F::Elem {
        &self.coeffs[monomial_index(self.degree, a, b)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "can only add forms of equal degree");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Self { field: self.field.clone(), degree: self.degree, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "can only subtract forms of equal degree");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Self { field: self.field.clone(), degree: self.degree, coeffs }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self { field: self.field.clone(), degree: self.degree, coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        Self { field: self.field.clone(), degree: self.degree, coeffs }
    }

    /// Scale so the first nonzero coefficient is 1; the zero form is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.coeffs.iter().find(|c| !self.field.is_zero(c)) {
            None => self.clone(),
            Some(lead) => {
                let inv = self.field.inv(lead).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Multiplication by the variable of the given index (0 = x, 1 = y, 2 = z).
    pub fn times_variable(&self, var: usize) -> Self {
        assert!(var < 3);
        let d = self.degree;
        let mut out = Self::zero(self.field.clone(), d + 1);
        for (i, exp) in MonomialBasis::new(d).exponents().iter().enumerate() {
            if self.field.is_zero(&self.coeffs[i]) {
                continue;
            }
            let mut e = *exp;
            e[var] += 1;
            let idx = monomial_index(d + 1, e[0], e[1]);
            out.coeffs[idx] = self.coeffs[i].clone();
        }
        out
    }

    /// Exact coefficient convolution; the result has degree `deg f + deg g`.
    pub fn multiply(&self, other: &Self) -> Self {
        let f = &self.field;
        let d = self.degree + other.degree;
        let mut out = Self::zero(f.clone(), d);
        let left = MonomialBasis::new(self.degree);
        let right = MonomialBasis::new(other.degree);
        for (i, le) in left.exponents().iter().enumerate() {
            if f.is_zero(&self.coeffs[i]) {
                continue;
            }
            for (j, re) in right.exponents().iter().enumerate() {
                if f.is_zero(&other.coeffs[j]) {
                    continue;
                }
                let idx = monomial_index(d, le[0] + re[0], le[1] + re[1]);
                let term = f.mul(&self.coeffs[i], &other.coeffs[j]);
                out.coeffs[idx] = f.add(&out.coeffs[idx], &term);
            }
        }
        out
    }

    /// Evaluation at raw (possibly unnormalized) coordinates.
    pub fn evaluate_at(&self, coords: &[F::Elem; 3]) -> F::Elem {
        let f = &self.field;
        let d = self.degree;
        let mut powers: [Vec<F::Elem>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (v, pow) in powers.iter_mut().enumerate() {
            pow.push(f.one());
            for k in 1..=d {
                let prev = pow[k - 1].clone();
                pow.push(f.mul(&prev, &coords[v]));
            }
        }
        let mut acc = f.zero();
        for (i, exp) in MonomialBasis::new(d).exponents().iter().enumerate() {
            if f.is_zero(&self.coeffs[i]) {
                continue;
            }
            let mut term = self.coeffs[i].clone();
            for v in 0..3 {
                term = f.mul(&term, &powers[v][exp[v]]);
            }
            acc = f.add(&acc, &term);
        }
        acc
    }

    pub fn evaluate(&self, point: &ProjPoint<F>) -> F::Elem {
        self.evaluate_at(point.coords())
    }
}

impl<F: Field> fmt::Display for Form<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = &self.field;
        let mut printed = false;
        for (i, exp) in MonomialBasis::new(self.degree).exponents().iter().enumerate() {
            if f.is_zero(&self.coeffs[i]) {
                continue;
            }
            if printed {
                write!(out, " + ")?;
            }
            let mut vars = String::new();
            for (v, name) in VARIABLES.iter().enumerate() {
                match exp[v] {
                    0 => {}
                    1 => vars.push_str(name),
                    e => vars.push_str(&format!("{name}^{e}")),
                }
            }
            let coeff = &self.coeffs[i];
            if vars.is_empty() {
                write!(out, "{coeff}")?;
            } else if *coeff == f.one() {
                write!(out, "{vars}")?;
            } else {
                write!(out, "{coeff}*{vars}")?;
            }
            printed = true;
        }
        if !printed {
            write!(out, "0")?;
        }
        Ok(())
    }
}

/// A point of the projective plane, normalized so the last nonzero
/// coordinate is 1.
#[derive(Debug, Clone)]
pub struct ProjPoint<F: Field> {
    coords: [F::Elem; 3],
}

impl<F: Field> ProjPoint<F> {
    pub fn new(field: &F, coords: [F::Elem; 3]) -> Result<Self, RingError> {
        let last = (0..3).rev().find(|&i| !field.is_zero(&coords[i]));
        let Some(last) = last else {
            return Err(RingError::ZeroPoint);
        };
        let inv = field.inv(&coords[last]).expect("coordinate is nonzero");
        let mut normalized = coords.map(|c| field.mul(&c, &inv));
        normalized[last] = field.one();
        Ok(Self { coords: normalized })
    }

    pub fn from_ints(field: &F, coords: [i64; 3]) -> Result<Self, RingError> {
        Self::new(field, coords.map(|c| field.from_i64(c)))
    }

    pub fn coords(&self) -> &[F::Elem; 3] {
        &self.coords
    }
}

impl<F: Field> PartialEq for ProjPoint<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl<F: Field> Eq for ProjPoint<F> {}

impl<F: Field> PartialOrd for ProjPoint<F> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> Ord for ProjPoint<F> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl<F: Field> std::hash::Hash for ProjPoint<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl<F: Field> fmt::Display for ProjPoint<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "[{}:{}:{}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// A subspace of the degree-d forms, in canonical (RREF) coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace<F: Field> {
    degree: usize,
    space: Subspace<F>,
}

impl<F: Field> GradedSubspace<F> {
    pub fn new(degree: usize, space: Subspace<F>) -> Self {
        assert_eq!(
            space.ambient_dim(),
            form_space_dim(degree),
            "ambient dimension must match the degree's monomial count"
        );
        Self { degree, space }
    }

    pub fn zero(field: F, degree: usize) -> Self {
        Self::new(degree, Subspace::zero(field, form_space_dim(degree)))
    }

    pub fn full(field: F, degree: usize) -> Self {
        Self::new(degree, Subspace::full(field, form_space_dim(degree)))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    pub fn basis_form(&self, i: usize) -> Form<F> {
        Form::from_coeffs(
            self.space.field().clone(),
            self.degree,
            self.space.basis().row(i).to_vec(),
        )
    }

    pub fn basis_forms(&self) -> Vec<Form<F>> {
        (0..self.dim()).map(|i| self.basis_form(i)).collect()
    }

    pub fn contains(&self, form: &Form<F>) -> bool {
        assert_eq!(form.degree(), self.degree, "degree mismatch");
        self.space.contains(form.coeffs())
    }
}

/// Span of x*V, y*V, z*V for a graded subspace V; one degree higher.
pub fn multiply_by_linear_forms<F: Field>(v: &GradedSubspace<F>) -> GradedSubspace<F> {
    let field = v.space().field().clone();
    let target = v.degree() + 1;
    let mut rows = Vec::with_capacity(3 * v.dim());
    for i in 0..v.dim() {
        let form = v.basis_form(i);
        for var in 0..3 {
            rows.push(form.times_variable(var).coeffs().to_vec());
        }
    }
    let m = Matrix::from_rows(field, rows, form_space_dim(target));
    GradedSubspace::new(target, Subspace::from_spanning_rows(m))
}

/// Exact determinant of a square grid of homogeneous forms by cofactor
/// expansion. The degree grid must split as d_ij = u_i + v_j so the result
/// is homogeneous; zero entries still carry their prescribed degree.
pub fn poly_matrix_det<F: Field>(grid: &[Vec<Form<F>>]) -> Result<Form<F>, RingError> {
    let n = grid.len();
    if n == 0 || grid.iter().any(|row| row.len() != n) {
        return Err(RingError::NonSquareGrid);
    }
    for i in 0..n {
        for j in 0..n {
            let dij = grid[i][j].degree() as i64;
            let want = grid[i][0].degree() as i64 + grid[0][j].degree() as i64
                - grid[0][0].degree() as i64;
            if dij != want {
                return Err(RingError::InconsistentDegrees);
            }
        }
    }
    Ok(det_recursive(grid.to_vec()))
}

fn det_recursive<F: Field>(grid: Vec<Vec<Form<F>>>) -> Form<F> {
    let n = grid.len();
    if n == 1 {
        return grid[0][0].clone();
    }
    let field = grid[0][0].field().clone();
    let expected: usize = (0..n).map(|i| grid[i][0].degree()).sum::<usize>()
        + (1..n).map(|j| grid[0][j].degree()).sum::<usize>()
        - (n - 1) * grid[0][0].degree();
    let mut acc = Form::zero(field, expected);
    for j in 0..n {
        if grid[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Form<F>>> = grid[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = grid[0][j].multiply(&det_recursive(minor));
        debug_assert_eq!(term.degree(), expected);
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals, DEFAULT_PRIME};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn monomial_basis_size_and_order() {
        for d in 0..=20 {
            assert_eq!(MonomialBasis::new(d).len(), form_space_dim(d));
        }
        let b = MonomialBasis::new(2);
        assert_eq!(
            b.exponents(),
            &[[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]]
        );
        for (i, e) in b.exponents().iter().enumerate() {
            assert_eq!(b.index_of(e[0], e[1]), i);
        }
    }

    #[test]
    fn evaluation_of_simple_forms() {
        let f = fp();
        let x2 = Form::monomial(f, [2, 0, 0]);
        let pt = ProjPoint::from_ints(&f, [1, 0, 0]).unwrap();
        assert_eq!(x2.evaluate(&pt), 1);

        // xz - y^2 vanishes along [t^2 : t : 1].
        let conic = Form::monomial(f, [1, 0, 1]).sub(&Form::monomial(f, [0, 2, 0]));
        for t in [0i64, 1, 2, 3, 17, 4001] {
            let pt = ProjPoint::from_ints(&f, [t * t, t, 1]).unwrap();
            assert_eq!(conic.evaluate(&pt), 0);
        }
    }

    #[test]
    fn point_normalization_and_equality() {
        let f = fp();
        let a = ProjPoint::from_ints(&f, [2, 4, 6]).unwrap();
        let b = ProjPoint::from_ints(&f, [1, 2, 3]).unwrap();
        assert_eq!(a, b);
        let c = ProjPoint::from_ints(&f, [5, 0, 0]).unwrap();
        assert_eq!(c.coords(), &[1, 0, 0]);
        assert_eq!(ProjPoint::from_ints(&f, [0, 0, 0]), Err(RingError::ZeroPoint));
    }

    #[test]
    fn multiply_basics() {
        let f = fp();
        let x = Form::monomial(f, [1, 0, 0]);
        let y = Form::monomial(f, [0, 1, 0]);
        let xy = x.multiply(&y);
        assert_eq!(xy, Form::monomial(f, [1, 1, 0]));
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let g = Form::random(&f, 3, &mut rng).unwrap();
        assert_eq!(g.multiply(&Form::one(f)), g);
    }

    #[test]
    fn rational_forms_cross_check() {
        let q = Rationals;
        let half_x = Form::monomial(q, [1, 0, 0]).scale(&crate::field::fraction(1, 2));
        let two_y = Form::monomial(q, [0, 1, 0]).scale(&crate::field::fraction(2, 1));
        let prod = half_x.multiply(&two_y);
        assert_eq!(prod, Form::monomial(q, [1, 1, 0]));
    }

    #[test]
    fn poly_det_hand_cases() {
        let f = fp();
        let x = Form::monomial(f, [1, 0, 0]);
        let y = Form::monomial(f, [0, 1, 0]);
        let z = Form::monomial(f, [0, 0, 1]);
        let det1 = poly_matrix_det(&[vec![x.clone()]]).unwrap();
        assert_eq!(det1, x);
        let det2 = poly_matrix_det(&[vec![x.clone(), y.clone()], vec![y.clone(), z.clone()]]).unwrap();
        let expected = Form::monomial(f, [1, 0, 1]).sub(&Form::monomial(f, [0, 2, 0]));
        assert_eq!(det2, expected);
    }

    #[test]
    fn poly_det_rejects_inconsistent_degrees() {
        let f = fp();
        let x = Form::monomial(f, [1, 0, 0]);
        let q = Form::monomial(f, [2, 0, 0]);
        let grid = vec![vec![x.clone(), q.clone()], vec![q, x]];
        assert_eq!(poly_matrix_det(&grid), Err(RingError::InconsistentDegrees));
    }

    #[test]
    fn poly_det_with_scalar_entries_matches_matrix_det() {
        let f = fp();
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..10 {
            let entries: Vec<u64> = (0..16).map(|_| rng.gen_range(0..f.characteristic())).collect();
            let grid: Vec<Vec<Form<PrimeField>>> = (0..4)
                .map(|i| (0..4).map(|j| Form::constant(f, entries[4 * i + j])).collect())
                .collect();
            let poly = poly_matrix_det(&grid).unwrap();
            let scalar = Matrix::new(f, 4, 4, entries).det();
            assert_eq!(poly.coeffs(), &[scalar]);
        }
    }

    #[test]
    fn poly_det_swapping_rows_negates() {
        let f = fp();
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        let grid: Vec<Vec<Form<PrimeField>>> = (0..3)
            .map(|_| (0..3).map(|_| Form::random(&f, 1, &mut rng).unwrap()).collect())
            .collect();
        let mut swapped = grid.clone();
        swapped.swap(0, 2);
        let d = poly_matrix_det(&grid).unwrap();
        let ds = poly_matrix_det(&swapped).unwrap();
        assert_eq!(ds, d.neg());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn multiplication_is_commutative_and_associative(seed in any::<u64>()) {
            let f = fp();
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let a = Form::random(&f, 2, &mut rng).unwrap();
            let b = Form::random(&f, 1, &mut rng).unwrap();
            let c = Form::random(&f, 2, &mut rng).unwrap();
            prop_assert_eq!(a.multiply(&b), b.multiply(&a));
            prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        }

        #[test]
        fn evaluation_is_a_ring_homomorphism(seed in any::<u64>()) {
            let f = fp();
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let a = Form::random(&f, 2, &mut rng).unwrap();
            let b = Form::random(&f, 3, &mut rng).unwrap();
            let coords = [
                f.random_scalar(&mut rng).unwrap(),
                f.random_scalar(&mut rng).unwrap(),
                f.random_scalar(&mut rng).unwrap(),
            ];
            let lhs = a.multiply(&b).evaluate_at(&coords);
            let rhs = f.mul(&a.evaluate_at(&coords), &b.evaluate_at(&coords));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn evaluation_scales_by_degree_homogeneity(seed in any::<u64>(), lambda in 1u64..DEFAULT_PRIME) {
            let f = fp();
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let form = Form::random(&f, 3, &mut rng).unwrap();
            let coords = [
                f.random_scalar(&mut rng).unwrap(),
                f.random_scalar(&mut rng).unwrap(),
                f.random_scalar(&mut rng).unwrap(),
            ];
            let scaled = [
                f.mul(&coords[0], &lambda),
                f.mul(&coords[1], &lambda),
                f.mul(&coords[2], &lambda),
            ];
            let factor = f.pow(lambda, 3);
            prop_assert_eq!(
                form.evaluate_at(&scaled),
                f.mul(&factor, &form.evaluate_at(&coords))
            );
        }
    }
}
