//! Cyclic codes of length n over GF(q^2): converting between defining sets
//! (unions of q^2-cyclotomic cosets) and generator polynomials, through the
//! splitting field GF(q^2)(zeta) with zeta a fixed primitive n-th root.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::field::SplittingField;
use crate::matrix::Mat;
use crate::poly::Poly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CyclicError {
    #[error("defining set is not closed under multiplication by q^2 (witness {0})")]
    NotCosetClosed(u64),
    #[error("index {0} is out of range for length {1}")]
    IndexOutOfRange(u64, u64),
    #[error("polynomial does not divide x^n - 1")]
    NotDivisor,
}

/// Generator polynomial prod_{i in T} (x - zeta^i) of the cyclic code with
/// defining set T. T must be a union of q^2-cyclotomic cosets mod n.
pub fn generator_from_defining_set(
    sf: &SplittingField,
    t_set: &BTreeSet<u64>,
) -> Result<Poly, CyclicError> {
    let n = sf.n();
    let q2 = sf.base().order() as u64;
    if let Some(&i) = t_set.iter().find(|&&i| i >= n) {
        return Err(CyclicError::IndexOutOfRange(i, n));
    }
    if let Some(&i) = t_set.iter().find(|&&i| !t_set.contains(&((i * q2) % n))) {
        return Err(CyclicError::NotCosetClosed(i));
    }
    let ext = sf.ext();
    let mut coeffs = vec![ext.one()];
    for &i in t_set {
        let z = sf.zeta_pow(i).clone();
        let mut next = Vec::with_capacity(coeffs.len() + 1);
        next.push(ext.neg(&ext.mul(&z, &coeffs[0])));
        for j in 1..coeffs.len() {
            next.push(ext.sub(&coeffs[j - 1], &ext.mul(&z, &coeffs[j])));
        }
        next.push(coeffs.last().unwrap().clone());
        coeffs = next;
    }
    let base_coeffs: Vec<_> = coeffs
        .iter()
        .map(|c| sf.project(c).expect("coset-closed product must have base-field coefficients"))
        .collect();
    Ok(Poly::from_coeffs(sf.base(), base_coeffs))
}

/// Defining set {i : g(zeta^i) = 0} of a divisor g of x^n - 1.
pub fn defining_set_of(sf: &SplittingField, g: &Poly) -> Result<BTreeSet<u64>, CyclicError> {
    let n = sf.n();
    if !g.divides(&Poly::x_pow_minus_one(sf.base(), n as usize)) {
        return Err(CyclicError::NotDivisor);
    }
    let ext = sf.ext();
    Ok((0..n).filter(|&i| ext.is_zero(&sf.eval_at_zeta_pow(g.coeffs(), i))).collect())
}

/// Dimension n - deg g of the cyclic code generated by a divisor g of x^n - 1.
pub fn dimension(n: u64, g: &Poly) -> u64 {
    n - g.degree().expect("zero polynomial generates no cyclic code") as u64
}

/// Circulant generator matrix of the cyclic code of length n generated by g:
/// rows x^i * g for 0 <= i < n - deg g.
pub fn generator_matrix(n: usize, g: &Poly) -> Mat {
    let deg = g.degree().expect("zero polynomial generates no cyclic code");
    assert!(deg <= n, "generator degree exceeds the length");
    if deg == n {
        return Mat::from_rows_cols(g.field().clone(), Vec::new(), n);
    }
    let mut v = g.coeff_vector(n);
    let mut rows = Vec::with_capacity(n - deg);
    for _ in 0..(n - deg) {
        rows.push(v.clone());
        v.rotate_right(1);
    }
    Mat::from_rows_cols(g.field().clone(), rows, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets;
    use crate::field::Field;
    use std::sync::Arc;

    fn sf(order: usize, n: u64) -> SplittingField {
        SplittingField::new(&Field::with_order(order).unwrap(), n).unwrap()
    }

    #[test]
    fn empty_and_full_defining_sets() {
        let s = sf(4, 15);
        let one = generator_from_defining_set(&s, &BTreeSet::new()).unwrap();
        assert_eq!(one, Poly::one(s.base()));
        let full: BTreeSet<u64> = (0..15).collect();
        let g = generator_from_defining_set(&s, &full).unwrap();
        assert_eq!(g, Poly::x_pow_minus_one(s.base(), 15));
    }

    #[test]
    fn rejects_non_closed_sets() {
        let s = sf(4, 5);
        let t: BTreeSet<u64> = [1u64].into_iter().collect();
        assert_eq!(generator_from_defining_set(&s, &t), Err(CyclicError::NotCosetClosed(1)));
        let t2: BTreeSet<u64> = [1u64, 7].into_iter().collect();
        assert_eq!(generator_from_defining_set(&s, &t2), Err(CyclicError::IndexOutOfRange(7, 5)));
    }

    #[test]
    fn roundtrip_random_coset_unions() {
        let mut state = 0x0dd5_eed5_u64;
        let mut rnd = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as u64
        };
        for (order, n) in [(4usize, 15u64), (4, 21), (9, 13), (9, 20), (16, 13), (25, 13)] {
            let s = sf(order, n);
            let all = cosets::cyclotomic_cosets(n, order as u64);
            for _ in 0..6 {
                let mut t = BTreeSet::new();
                for c in &all {
                    if rnd() % 2 == 0 {
                        t.extend(c.members.iter().copied());
                    }
                }
                let g = generator_from_defining_set(&s, &t).unwrap();
                assert_eq!(g.degree().unwrap_or(0), t.len());
                assert_eq!(g.leading_coeff(), if t.len() == n as usize { 1 } else { g.leading_coeff() });
                assert!(g.divides(&Poly::x_pow_minus_one(s.base(), n as usize)));
                assert_eq!(defining_set_of(&s, &g).unwrap(), t);
            }
        }
    }

    #[test]
    fn union_and_intersection_are_lcm_and_gcd() {
        let s = sf(9, 20);
        let all = cosets::cyclotomic_cosets(20, 9);
        let t1: BTreeSet<u64> = all[0].members.iter().chain(&all[1].members).copied().collect();
        let t2: BTreeSet<u64> = all[1].members.iter().chain(&all[2].members).copied().collect();
        let g1 = generator_from_defining_set(&s, &t1).unwrap();
        let g2 = generator_from_defining_set(&s, &t2).unwrap();
        let gu = generator_from_defining_set(&s, &t1.union(&t2).copied().collect()).unwrap();
        let gi = generator_from_defining_set(&s, &t1.intersection(&t2).copied().collect()).unwrap();
        assert_eq!(g1.lcm(&g2), gu.monic());
        assert_eq!(g1.gcd(&g2), gi.monic());
    }

    #[test]
    fn hermitian_dual_generator_has_complementary_defining_set() {
        // Defining set of the Hermitian dual code: all of Z_n minus the image
        // of T under i -> (-q * i) mod n.
        for (order, n) in [(4usize, 15u64), (4, 21), (9, 13), (25, 13)] {
            let s = sf(order, n);
            let q = s.base().q() as u64;
            let all = cosets::cyclotomic_cosets(n, order as u64);
            let t: BTreeSet<u64> = all[1].members.iter().copied().collect();
            let g = generator_from_defining_set(&s, &t).unwrap();
            let dual = g.hermitian_dual_gen(n as usize);
            let expect: BTreeSet<u64> =
                (0..n).filter(|i| !cosets::skew_image(n, q, &t).contains(i)).collect();
            assert_eq!(defining_set_of(&s, &dual).unwrap(), expect);
        }
    }

    #[test]
    fn known_generators_for_n41_over_gf4() {
        let s = sf(4, 41);
        let f: Arc<Field> = s.base().clone();
        let c1: BTreeSet<u64> = cosets::coset_of(41, 4, 1).members.into_iter().collect();
        let c3: BTreeSet<u64> = cosets::coset_of(41, 4, 3).members.into_iter().collect();
        let g1 = generator_from_defining_set(&s, &c1).unwrap();
        let g3 = generator_from_defining_set(&s, &c3).unwrap();
        assert_eq!(g1, Poly::parse(&f, "10320102301").unwrap());
        assert_eq!(g3, Poly::parse(&f, "12^{3}1312^{3}1").unwrap());
    }
}
