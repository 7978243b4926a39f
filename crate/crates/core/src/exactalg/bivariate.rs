use super::field::Field;
use super::poly::{PolyRing, UniPoly};
use crate::error::{Error, Result};

/// A polynomial in `y` whose coefficients are polynomials in `x`:
/// `ycoeffs[k]` is the coefficient of `y^k`. Trailing zero coefficients are
/// trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly<E> {
    ycoeffs: Vec<UniPoly<E>>,
}

impl<E: Clone> BiPoly<E> {
    pub fn from_ycoeffs(mut ycoeffs: Vec<UniPoly<E>>) -> Self {
        while ycoeffs.last().is_some_and(|c| c.is_zero()) {
            ycoeffs.pop();
        }
        BiPoly { ycoeffs }
    }

    pub fn zero() -> Self {
        BiPoly { ycoeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.ycoeffs.is_empty()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.ycoeffs.len().checked_sub(1)
    }

    pub fn ycoeffs(&self) -> &[UniPoly<E>] {
        &self.ycoeffs
    }

    /// Builds from `(i, j, c)` terms meaning `c x^i y^j`.
    pub fn from_terms<F: Field<Elem = E>>(ring: &PolyRing<F>, terms: &[(usize, usize, E)]) -> Self {
        let mut rows: Vec<UniPoly<E>> = Vec::new();
        for (i, j, c) in terms {
            if rows.len() <= *j {
                rows.resize(*j + 1, UniPoly::zero());
            }
            rows[*j] = ring.add(&rows[*j], &ring.monomial(c.clone(), *i));
        }
        Self::from_ycoeffs(rows)
    }

    pub fn deriv_x<F: Field<Elem = E>>(&self, ring: &PolyRing<F>) -> Self {
        Self::from_ycoeffs(self.ycoeffs.iter().map(|c| ring.derivative(c)).collect())
    }

    pub fn deriv_y<F: Field<Elem = E>>(&self, ring: &PolyRing<F>) -> Self {
        let field = ring.field();
        Self::from_ycoeffs(
            self.ycoeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| ring.scale(c, &field.from_i64(k as i64)))
                .collect(),
        )
    }

    /// Evaluates at `x = xi` in an extension `L` of the coefficient field,
    /// returning a polynomial in `y` over `L`.
    pub fn eval_x<L: Field>(&self, embed: impl Fn(&E) -> L::Elem, target: &PolyRing<L>, xi: &L::Elem) -> UniPoly<L::Elem> {
        let field = target.field();
        let coeffs = self
            .ycoeffs
            .iter()
            .map(|cx| {
                cx.coeffs()
                    .iter()
                    .rev()
                    .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, xi), &embed(c)))
            })
            .collect();
        target.from_coeffs(coeffs)
    }
}

/// Resultant with respect to `y`, as the determinant of the Sylvester matrix
/// with the `deg_y g` rows of `f` above the `deg_y f` rows of `g`.
///
/// Computed by fraction-free (Bareiss) elimination over `F[x]`. The
/// resultant of two nonzero y-constants is 1; if exactly one input is zero
/// the resultant is zero.
pub fn resultant_y<F: Field>(
    ring: &PolyRing<F>,
    f: &BiPoly<F::Elem>,
    g: &BiPoly<F::Elem>,
) -> Result<UniPoly<F::Elem>> {
    match (f.degree_y(), g.degree_y()) {
        (None, None) => Err(Error::invalid("resultant of two zero polynomials")),
        (None, _) | (_, None) => Ok(UniPoly::zero()),
        (Some(m), Some(n)) => Ok(sylvester_det(ring, f, g, m, n)),
    }
}

fn sylvester_det<F: Field>(
    ring: &PolyRing<F>,
    f: &BiPoly<F::Elem>,
    g: &BiPoly<F::Elem>,
    m: usize,
    n: usize,
) -> UniPoly<F::Elem> {
    let size = m + n;
    if size == 0 {
        return ring.one();
    }
    // Row entries run from the highest power of y down to y^0.
    let mut mat = vec![vec![UniPoly::zero(); size]; size];
    for r in 0..n {
        for k in 0..=m {
            mat[r][r + k] = f.ycoeffs[m - k].clone();
        }
    }
    for r in 0..m {
        for k in 0..=n {
            mat[n + r][r + k] = g.ycoeffs[n - k].clone();
        }
    }
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..size - 1 {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(k, i);
                    negate = !negate;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = ring.sub(
                    &ring.mul(&mat[i][j], &mat[k][k]),
                    &ring.mul(&mat[i][k], &mat[k][j]),
                );
                mat[i][j] = ring.div_exact(&t, &prev);
            }
            mat[i][k] = UniPoly::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        ring.neg(&det)
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q_ring() -> PolyRing<Rationals> {
        PolyRing::new(Rationals)
    }

    fn qbi(terms: &[(usize, usize, i64)]) -> BiPoly<num_rational::BigRational> {
        let r = q_ring();
        let t: Vec<_> = terms
            .iter()
            .map(|&(i, j, c)| (i, j, r.field().from_i64(c)))
            .collect();
        BiPoly::from_terms(&r, &t)
    }

    #[test]
    fn elliptic_against_derivative() {
        let r = q_ring();
        // y^2 + x^3 + 1 and 2y
        let f = qbi(&[(0, 2, 1), (3, 0, 1), (0, 0, 1)]);
        let g = qbi(&[(0, 1, 2)]);
        assert_eq!(resultant_y(&r, &f, &g).unwrap(), r.from_i64s(&[4, 0, 0, 4]));
    }

    #[test]
    fn common_factor_gives_zero() {
        let r = q_ring();
        let f = qbi(&[(0, 2, 1), (0, 0, 1)]);
        assert!(resultant_y(&r, &f, &f).unwrap().is_zero());
    }

    #[test]
    fn linear_pair_sign_convention() {
        let r = q_ring();
        // rows [1, -x] over [1, x]: det = x - (-x) = 2x
        let f = qbi(&[(0, 1, 1), (1, 0, -1)]);
        let g = qbi(&[(0, 1, 1), (1, 0, 1)]);
        assert_eq!(resultant_y(&r, &f, &g).unwrap(), r.from_i64s(&[0, 2]));
        assert_eq!(resultant_y(&r, &g, &f).unwrap(), r.from_i64s(&[0, -2]));
    }

    #[test]
    fn constant_in_y_is_power() {
        let r = q_ring();
        let f = qbi(&[(0, 3, 1), (1, 0, 1)]);
        let g = qbi(&[(2, 0, 3)]);
        assert_eq!(resultant_y(&r, &f, &g).unwrap(), r.pow(&r.from_i64s(&[0, 0, 3]), 3));
    }

    #[test]
    fn both_zero_rejected() {
        let r = q_ring();
        assert!(resultant_y(&r, &BiPoly::zero(), &BiPoly::zero()).is_err());
        assert!(resultant_y(&r, &BiPoly::zero(), &qbi(&[(0, 1, 1)])).unwrap().is_zero());
    }

    /// Degree of gcd in y over F(x) via a primitive pseudo-remainder sequence.
    fn gcd_y_degree(ring: &PolyRing<PrimeField>, f: &BiPoly<u64>, g: &BiPoly<u64>) -> usize {
        let prem = |a: &BiPoly<u64>, b: &BiPoly<u64>| -> BiPoly<u64> {
            let mut r = a.ycoeffs.clone();
            let db = b.degree_y().unwrap();
            let lb = b.ycoeffs[db].clone();
            while r.len() > db && !r.is_empty() {
                let k = r.len() - 1;
                let lr = r[k].clone();
                for c in r.iter_mut() {
                    *c = ring.mul(c, &lb);
                }
                for (i, bc) in b.ycoeffs.iter().enumerate() {
                    let idx = k - db + i;
                    r[idx] = ring.sub(&r[idx], &ring.mul(&lr, bc));
                }
                while r.last().is_some_and(|c| c.is_zero()) {
                    r.pop();
                }
            }
            let content = r.iter().fold(UniPoly::zero(), |acc, c| ring.gcd(&acc, c));
            if !content.is_zero() {
                r = r.iter().map(|c| ring.div_exact(c, &content)).collect();
            }
            BiPoly::from_ycoeffs(r)
        };
        let (mut a, mut b) = (f.clone(), g.clone());
        if a.degree_y() < b.degree_y() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = prem(&a, &b);
            a = b;
            b = r;
        }
        a.degree_y().unwrap()
    }

    fn bi_strategy() -> impl Strategy<Value = Vec<(usize, usize, u64)>> {
        proptest::collection::vec((0usize..3, 0usize..3, 0u64..5), 1..6)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]
        #[test]
        fn resultant_vanishes_iff_common_factor(ft in bi_strategy(), gt in bi_strategy(),
                                                ht in bi_strategy(), plant in any::<bool>()) {
            let r = PolyRing::new(PrimeField::new(5).unwrap());
            let mut f = BiPoly::from_terms(&r, &ft);
            let mut g = BiPoly::from_terms(&r, &gt);
            if plant {
                let h = BiPoly::from_terms(&r, &ht);
                let mul = |a: &BiPoly<u64>, b: &BiPoly<u64>| {
                    let mut out = vec![UniPoly::zero(); a.ycoeffs.len() + b.ycoeffs.len()];
                    for (i, x) in a.ycoeffs.iter().enumerate() {
                        for (j, y) in b.ycoeffs.iter().enumerate() {
                            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
                        }
                    }
                    BiPoly::from_ycoeffs(out)
                };
                f = mul(&f, &h);
                g = mul(&g, &h);
            }
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assume!(f.degree_y() > Some(0) || g.degree_y() > Some(0));
            let res = resultant_y(&r, &f, &g).unwrap();
            let common = gcd_y_degree(&r, &f, &g) > 0;
            prop_assert_eq!(res.is_zero(), common);
        }
    }
}
