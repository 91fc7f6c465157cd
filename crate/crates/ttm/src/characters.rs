//! Characters chi^alpha and cocharacters lambda_beta of the torus, their
//! extension criteria across charts, the holomorphy test, and character
//! cosets modulo beta_I-perp.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fan::{beta_perp, BetaPerp, TopologicalFan};
use crate::ring::{OrderFlavor, RVector};

/// chi^alpha(g) = prod_k g_k^{alpha^k}, numeric.
pub fn char_eval(alpha: &RVector, g: &[Complex64]) -> Result<Complex64> {
    if alpha.len() != g.len() {
        return Err(Error::Dimension("character evaluation point length".into()));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for (a, &gk) in alpha.components.iter().zip(g) {
        acc *= a.power_eval(gk)?;
    }
    Ok(acc)
}

/// lambda_beta(g) = (g^{beta^1}, ..., g^{beta^n}), numeric.
pub fn cochar_eval(beta: &RVector, g: Complex64) -> Result<Vec<Complex64>> {
    beta.components.iter().map(|b| b.power_eval(g)).collect()
}

/// chi^alpha extends over the chart U_I in the given flavor iff
/// bracket(alpha, beta_i) >= 0 for every i in I.
pub fn extends_over_chart(
    fan: &TopologicalFan,
    alpha: &RVector,
    simplex: &[usize],
    flavor: OrderFlavor,
) -> Result<bool> {
    let i_sorted = fan.checked_simplex(simplex)?;
    if alpha.len() != fan.n {
        return Err(Error::Dimension("alpha length".into()));
    }
    for &i in &i_sorted {
        let br = alpha.bracket(fan.ray(i)?)?;
        let ok = match flavor {
            OrderFlavor::Continuous => br.geq_c_zero(),
            OrderFlavor::Smooth => br.geq_s_zero(),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn extends_continuously(fan: &TopologicalFan, alpha: &RVector, simplex: &[usize]) -> Result<bool> {
    extends_over_chart(fan, alpha, simplex, OrderFlavor::Continuous)
}

pub fn extends_smoothly(fan: &TopologicalFan, alpha: &RVector, simplex: &[usize]) -> Result<bool> {
    extends_over_chart(fan, alpha, simplex, OrderFlavor::Smooth)
}

/// chi^alpha is holomorphic iff every component lies in diag(Z).
pub fn is_holomorphic_char(alpha: &RVector) -> bool {
    alpha.is_diag()
}

/// A character of the stabilizer T_I: a representative modulo beta_I-perp.
#[derive(Clone, Debug)]
pub struct CharacterCoset {
    pub representative: RVector,
    pub modulus: BetaPerp,
}

impl CharacterCoset {
    /// Coset equality: the difference of representatives annihilates the
    /// rays of I.
    pub fn same_coset(&self, other: &CharacterCoset) -> Result<bool> {
        if self.representative.len() != other.representative.len() {
            return Err(Error::Dimension("coset representatives".into()));
        }
        self.modulus
            .contains(&self.representative.sub(&other.representative))
    }
}

/// The coset of alpha in R^n / beta_I-perp.
pub fn character_coset(
    fan: &TopologicalFan,
    alpha: &RVector,
    simplex: &[usize],
) -> Result<CharacterCoset> {
    if alpha.len() != fan.n {
        return Err(Error::Dimension("alpha length".into()));
    }
    Ok(CharacterCoset {
        representative: alpha.clone(),
        modulus: beta_perp(fan, simplex)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::dual_basis;
    use crate::fixtures;
    use crate::ring::RVector;

    #[test]
    fn char_eval_examples() {
        let fan = fixtures::nontoric_fan();
        let alpha = dual_basis(&fan, &[1, 2]).unwrap()[0].clone();
        let g = [Complex64::new(2.0, 0.0), Complex64::new(5.0, 0.0)];
        assert!((char_eval(&alpha, &g).unwrap() - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!(
            (char_eval(&RVector::zero(2), &g).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-12
        );
        assert!(char_eval(&alpha, &[Complex64::new(0.0, 0.0); 2]).is_err());
    }

    #[test]
    fn cochar_eval_examples() {
        let fan = fixtures::nontoric_fan();
        let beta1 = fan.ray(1).unwrap();
        let out = cochar_eval(beta1, Complex64::new(4.0, 0.0)).unwrap();
        assert!((out[0] - Complex64::new(4.0, 0.0)).norm() < 1e-12);
        assert!((out[1] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn extension_criteria() {
        let fan = fixtures::nontoric_fan();
        let zero = RVector::zero(2);
        assert!(extends_continuously(&fan, &zero, &[2, 3]).unwrap());
        assert!(extends_smoothly(&fan, &zero, &[2, 3]).unwrap());
        let alpha_11 = dual_basis(&fan, &[1, 2]).unwrap()[0].clone();
        assert!(extends_continuously(&fan, &alpha_11, &[1, 2]).unwrap());
        assert!(extends_smoothly(&fan, &alpha_11, &[1, 2]).unwrap());
        // bracket(alpha^{J1}_1, beta_3) = (-1, -1) fails both orders.
        assert!(!extends_continuously(&fan, &alpha_11, &[2, 3]).unwrap());
        assert!(!extends_smoothly(&fan, &alpha_11, &[2, 3]).unwrap());
    }

    #[test]
    fn holomorphy() {
        use crate::ring::RingElem;
        let diag = RVector::new(vec![RingElem::from_ints(3, 0, 3); 2]);
        assert!(is_holomorphic_char(&diag));
        let conj = RVector::new(vec![RingElem::from_ints(1, 0, -1), RingElem::zero()]);
        assert!(!is_holomorphic_char(&conj));
        let imag = RVector::new(vec![RingElem::from_ints(0, 1, 0), RingElem::zero()]);
        assert!(!is_holomorphic_char(&imag));
    }

    #[test]
    fn coset_arithmetic() {
        let fan = fixtures::nontoric_fan();
        let alpha = dual_basis(&fan, &[1, 2]).unwrap()[0].clone();
        // Maximal I: cosets are plain equality.
        let a = character_coset(&fan, &alpha, &[1, 2]).unwrap();
        let b = character_coset(&fan, &RVector::zero(2), &[1, 2]).unwrap();
        assert!(a.same_coset(&a).unwrap());
        assert!(!a.same_coset(&b).unwrap());
        // I = empty: everything is one coset.
        let c = character_coset(&fan, &alpha, &[]).unwrap();
        let d = character_coset(&fan, &RVector::zero(2), &[]).unwrap();
        assert!(c.same_coset(&d).unwrap());
        // I = {1}: shifting by an annihilator element keeps the coset.
        let perp = beta_perp(&fan, &[1]).unwrap();
        assert_eq!(perp.bc_space.dim(), 2);
        let bc = perp.bc_space.basis()[0].clone();
        let v = perp.v_lattice[0].clone();
        let delta = perp.element(&bc, &v).unwrap();
        let e = character_coset(&fan, &alpha, &[1]).unwrap();
        let f = character_coset(&fan, &alpha.add(&delta), &[1]).unwrap();
        assert!(e.same_coset(&f).unwrap());
    }
}
