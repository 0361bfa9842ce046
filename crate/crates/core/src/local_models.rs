//! Exact checks of the local covering models over a cusp and of the pleat
//! normal form.

use thiserror::Error;

use crate::exact::{bareiss_determinant, cubic_discriminant, rat, ExactError, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("pleat exponent must be at least 1")]
    InvalidExponent,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Outcome of one polynomial identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofRecord {
    pub name: String,
    pub lhs: Poly,
    pub rhs: Poly,
    /// `lhs - rhs` after any reduction; zero when the identity holds.
    pub remainder: Poly,
    pub facts: Vec<(String, String)>,
}

impl ProofRecord {
    pub fn holds(&self) -> bool {
        self.remainder.is_zero()
    }
}

fn p(vars: &[&str], src: &str) -> Poly {
    Poly::parse(vars, src).expect("fixed polynomial literal")
}

fn checked(record: ProofRecord) -> Result<ProofRecord, IdentityError> {
    if record.holds() {
        Ok(record)
    } else {
        Err(IdentityError::IdentityFailed(format!(
            "{}: remainder {}",
            record.name, record.remainder
        )))
    }
}

/// Triple-point model `y = -(z^3 - 3xz)/2`: the pullback of `x^3 - y^2`
/// is `(x - z^2)^2 (x - z^2/4)`, and the two curves are tangent to order 2.
pub fn verify_f3_identity() -> Result<ProofRecord, IdentityError> {
    let vars = ["x", "z"];
    let y = p(&vars, "-1/2*(z^3 - 3*x*z)");
    let x = Poly::var(&vars, "x");
    let lhs = x.pow(3) - y.pow(2);
    let r = p(&vars, "x - z^2");
    let c = p(&vars, "x - 1/4*z^2");
    let rhs = r.pow(2) * c.clone();
    let remainder = &lhs - &rhs;

    // Intersection multiplicity of R and C at the origin: restrict C to
    // the smooth curve R, parametrized by z.
    let on_r = c.substitute(0, &Poly::monomial(&vars, rat(1, 1), &[0, 2]));
    let contact = on_r
        .order()
        .ok_or_else(|| IdentityError::IdentityFailed("C contains R".into()))?;
    if contact != 2 {
        return Err(IdentityError::IdentityFailed(format!(
            "(C.R) = {contact}, expected 2"
        )));
    }
    checked(ProofRecord {
        name: "f3".into(),
        lhs,
        rhs,
        remainder,
        facts: vec![("(C.R)".into(), contact.to_string())],
    })
}

/// Six-sheeted model: with `x = -(z1 z2 + z2 z3 + z3 z1)/3` and
/// `y = -z1 z2 z3 / 2`, `x^3 - y^2 = prod (zi - zj)^2 / 108` modulo
/// `z1 + z2 + z3`.
pub fn verify_f6_identity() -> Result<ProofRecord, IdentityError> {
    let vars = ["z1", "z2", "z3"];
    let x = p(&vars, "-1/3*(z1*z2 + z2*z3 + z3*z1)");
    let y = p(&vars, "-1/2*z1*z2*z3");
    let lhs = x.pow(3) - y.pow(2);
    let rhs = p(&vars, "1/108*(z2 - z1)^2*(z3 - z2)^2*(z1 - z3)^2");
    let diff = &lhs - &rhs;
    let sum = p(&vars, "z1 + z2 + z3");

    let eliminated = diff.substitute(2, &p(&vars, "-z1 - z2"));
    let quotient = diff.divide_exact(&sum)?;
    if &quotient * &sum != diff {
        return Err(IdentityError::IdentityFailed(
            "f6 quotient does not reproduce the difference".into(),
        ));
    }
    checked(ProofRecord {
        name: "f6".into(),
        lhs,
        rhs,
        remainder: eliminated,
        facts: vec![("quotient by z1+z2+z3".into(), quotient.to_string())],
    })
}

/// Reduces modulo `z^3 = y - x^k z`, leaving degree at most 2 in `z`.
fn reduce_pleat(f: &Poly, relation_tail: &Poly, z: usize) -> Poly {
    let mut f = f.clone();
    loop {
        let coeffs = f.coeffs_in(z);
        let n = coeffs.len() - 1;
        if n < 3 || coeffs[n].is_zero() {
            return f;
        }
        let vars: Vec<&str> = f.vars().iter().map(String::as_str).collect();
        let mut shift = vec![0u32; vars.len()];
        shift[z] = n as u32;
        let top = &coeffs[n] * &Poly::monomial(&vars, rat(1, 1), &shift);
        shift[z] = (n - 3) as u32;
        let lowered =
            &coeffs[n] * &Poly::monomial(&vars, rat(1, 1), &shift) * relation_tail.clone();
        f = f - top + lowered;
    }
}

/// Pleat `y = z^3 + x^k z`: the 0th Fitting ideal of `O/(J)` as an
/// `O_{x,y}`-module, `J = 3z^2 + x^k`, is generated by `4x^{3k} + 27y^2`.
pub fn pleat_normal_form_check(k: u32) -> Result<ProofRecord, IdentityError> {
    if k == 0 {
        return Err(IdentityError::InvalidExponent);
    }
    let vars = ["x", "y", "z"];
    let z = 2;
    let xk = Poly::var(&vars, "x").pow(k);
    let tail = Poly::var(&vars, "y") - &xk * &Poly::var(&vars, "z");
    let jac = Poly::var(&vars, "z").pow(2).scale(&rat(3, 1)) + xk.clone();

    // Column j holds the image of z^j in the basis 1, z, z^2.
    let mut matrix = vec![vec![Poly::zero(&vars); 3]; 3];
    for j in 0..3u32 {
        let image = reduce_pleat(&(&jac * &Poly::var(&vars, "z").pow(j)), &tail, z);
        for (row, c) in matrix.iter_mut().zip(image.coeffs_in(z)) {
            row[j as usize] = c;
        }
    }
    let det = bareiss_determinant(matrix.clone())?;
    let expected = xk.pow(3).scale(&rat(4, 1)) + Poly::var(&vars, "y").pow(2).scale(&rat(27, 1));
    let sign = if (&det + &expected).is_zero() { -1 } else { 1 };
    let remainder = &det - &expected.scale(&rat(sign, 1));

    let disc = cubic_discriminant(&xk.with_vars(&["x", "y"])?, &(-Poly::var(&["x", "y"], "y")))?;
    if disc != expected.with_vars(&["x", "y"])? {
        return Err(IdentityError::IdentityFailed(format!(
            "discriminant {disc} differs from {expected}"
        )));
    }
    let rows: Vec<String> = matrix
        .iter()
        .map(|row| {
            format!(
                "[{}]",
                row.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    checked(ProofRecord {
        name: format!("pleat k={k}"),
        lhs: det,
        rhs: expected,
        remainder,
        facts: vec![
            ("multiplication matrix".into(), rows.join(" ")),
            ("sign".into(), sign.to_string()),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn f3_holds() {
        let rec = verify_f3_identity().unwrap();
        assert!(rec.holds());
        assert_eq!(rec.facts[0].1, "2");
    }

    #[test]
    fn f3_points() {
        let vars = ["x", "z"];
        let y = p(&vars, "-1/2*(z^3 - 3*x*z)");
        assert_eq!(y.evaluate(&[rat(1, 1), rat(1, 1)]), rat(1, 1));
        assert_eq!(y.evaluate(&[rat(1, 1), rat(2, 1)]), rat(-1, 1));
        let rec = verify_f3_identity().unwrap();
        for pt in [[rat(1, 1), rat(1, 1)], [rat(1, 1), rat(2, 1)]] {
            assert!(rec.lhs.evaluate(&pt).is_zero());
            assert!(rec.rhs.evaluate(&pt).is_zero());
        }
    }

    #[test]
    fn f6_holds() {
        let rec = verify_f6_identity().unwrap();
        assert!(rec.holds());
        let pt = [rat(1, 1), rat(-1, 1), rat(0, 1)];
        assert_eq!(rec.lhs.evaluate(&pt), rat(1, 27));
        assert_eq!(rec.rhs.evaluate(&pt), rat(1, 27));
        assert!(rec
            .lhs
            .evaluate(&[rat(0, 1), rat(0, 1), rat(0, 1)])
            .is_zero());
    }

    #[test]
    fn f6_needs_the_trace_relation() {
        let rec = verify_f6_identity().unwrap();
        assert!(!(&rec.lhs - &rec.rhs).is_zero());
    }

    #[test]
    fn pleat_determinants() {
        for k in 1..=3 {
            let rec = pleat_normal_form_check(k).unwrap();
            assert!(rec.holds());
            assert_eq!(rec.lhs.to_string(), format!("4*x^{} + 27*y^2", 3 * k));
        }
        assert_eq!(
            pleat_normal_form_check(0),
            Err(IdentityError::InvalidExponent)
        );
    }
}
