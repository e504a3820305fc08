use super::{weight_product, WeightSpec};
use crate::error::{Error, Result};
use crate::laurent::engine::ExpandOptions;
use crate::laurent::{LaurentPoly, Marginal};
use crate::scalar::ExactScalar;

/// `⟨f|g⟩ = CT(weight · f^* · g)` for `f, g` in the `w` variables whose
/// exponents lie in `[0, k]`. The weight coefficients are expanded once on
/// the box `w ∈ [-k, k]^{N_0}`, `z = 0`, which is all such pairings can see.
#[derive(Clone, Debug)]
pub struct InnerProductConfig {
    pub weight: WeightSpec,
    pub max_exponent: usize,
    marginal: Marginal,
}

impl InnerProductConfig {
    pub fn new(weight: &WeightSpec, max_exponent: usize, opts: ExpandOptions) -> Result<Self> {
        let marginal = Marginal::boxed(&weight_product(weight), weight.n0(), max_exponent as i32, opts)?;
        Ok(InnerProductConfig {
            weight: weight.clone(),
            max_exponent,
            marginal,
        })
    }

    /// Coefficient of `w^e z^0` in the weight.
    pub fn weight_coeff(&self, e: &[i32]) -> Result<ExactScalar> {
        self.marginal.at(e)
    }

    fn check(&self, f: &LaurentPoly) -> Result<()> {
        let n0 = self.weight.n0();
        for (e, _) in f.terms() {
            let w_ok = e.iter().take(n0).all(|&x| x >= 0 && x as usize <= self.max_exponent);
            if !w_ok || e.iter().skip(n0).any(|&x| x != 0) {
                return Err(Error::InvalidArgument(format!(
                    "exponent {e:?} outside the inner-product box [0, {}]",
                    self.max_exponent
                )));
            }
        }
        Ok(())
    }

    pub fn inner_product(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<ExactScalar> {
        self.check(f)?;
        self.check(g)?;
        self.marginal.pair(f, g)
    }
}

/// `CT(weight · f^* · g)` by full expansion; the reference for small cases.
pub fn inner_product_direct(spec: &WeightSpec, f: &LaurentPoly, g: &LaurentPoly) -> Result<ExactScalar> {
    let vars = spec.vars();
    let map: Vec<usize> = (0..f.vars().len()).collect();
    let f = f.embed(&vars, &map)?;
    let map: Vec<usize> = (0..g.vars().len()).collect();
    let g = g.embed(&vars, &map)?;
    let w = LaurentPoly::from_engine(&vars, weight_product(spec).expand_all()?)?;
    Ok(w.mul(&f.star())?.mul(&g)?.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::{monomial_sym, Partition};
    use crate::weight::{dp_integral, prop51_norm};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn one_with_one_is_the_integral() {
        let spec = WeightSpec::new(vec![2], 1).unwrap();
        let cfg = InnerProductConfig::new(&spec, 0, ExpandOptions::default()).unwrap();
        let one = monomial_sym(&Partition::empty(), 2).unwrap();
        assert_eq!(
            cfg.inner_product(&one, &one).unwrap(),
            dp_integral(&spec, 0, 0).unwrap()
        );
        assert_eq!(cfg.inner_product(&one, &one).unwrap(), "1 + q".parse().unwrap());
    }

    #[test]
    fn single_variable_is_trivial() {
        for lam in 0..3 {
            let spec = WeightSpec::new(vec![1], lam).unwrap();
            let cfg = InnerProductConfig::new(&spec, 1, ExpandOptions::default()).unwrap();
            let m = monomial_sym(&p("1"), 1).unwrap();
            assert!(cfg.inner_product(&m, &m).unwrap().is_one());
        }
    }

    #[test]
    fn column_norm_two_components() {
        let spec = WeightSpec::new(vec![2, 1], 1).unwrap();
        let cfg = InnerProductConfig::new(&spec, 1, ExpandOptions::default()).unwrap();
        let m = monomial_sym(&p("1,1"), 2).unwrap();
        let v = cfg.inner_product(&m, &m).unwrap();
        assert_eq!(v, "(1 + q)*(1 + q + q^2)".parse().unwrap());
        assert_eq!(v, prop51_norm(2, 1, 0).unwrap());
        assert_eq!(v, inner_product_direct(&spec, &m, &m).unwrap());
    }

    #[test]
    fn degrees_are_orthogonal() {
        let spec = WeightSpec::new(vec![2, 1], 1).unwrap();
        let cfg = InnerProductConfig::new(&spec, 2, ExpandOptions::default()).unwrap();
        let a = monomial_sym(&p("2"), 2).unwrap();
        let b = monomial_sym(&p("1"), 2).unwrap();
        assert!(cfg.inner_product(&a, &b).unwrap().is_zero());
        assert!(cfg.inner_product(&monomial_sym(&p("3"), 2).unwrap(), &a).is_err());
    }
}
