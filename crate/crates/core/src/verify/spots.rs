use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::report::Spot;
use crate::error::Result;
use crate::scalar::ExactScalar;
use crate::sym::{Partition, SymExpansion};

/// One side of a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(ExactScalar),
    Sym(SymExpansion),
}

impl Value {
    /// Canonical text; symmetric expansions print as `κ: c` pairs in
    /// descending reverse lexicographic order.
    pub fn text(&self) -> String {
        match self {
            Value::Scalar(s) => s.to_string(),
            Value::Sym(f) if f.is_empty() => "0".to_string(),
            Value::Sym(f) => {
                let terms: Vec<String> = f.iter().rev().map(|(p, c)| format!("[{p}]: {c}")).collect();
                terms.join("; ")
            }
        }
    }

    fn is_t_free(&self) -> bool {
        match self {
            Value::Scalar(s) => s.is_t_free(),
            Value::Sym(f) => f.iter().all(|(_, c)| c.is_t_free()),
        }
    }
}

impl From<ExactScalar> for Value {
    fn from(s: ExactScalar) -> Self {
        Value::Scalar(s)
    }
}

impl From<SymExpansion> for Value {
    fn from(f: SymExpansion) -> Self {
        Value::Sym(f)
    }
}

/// The coefficient vectors of both sides over a common support.
fn aligned(lhs: &Value, rhs: &Value) -> (Vec<ExactScalar>, Vec<ExactScalar>) {
    match (lhs, rhs) {
        (Value::Sym(f), Value::Sym(g)) => {
            let keys: BTreeSet<&Partition> = f.iter().chain(g.iter()).map(|(p, _)| p).collect();
            keys.into_iter().map(|p| (f.coeff(p), g.coeff(p))).unzip()
        }
        (Value::Scalar(a), Value::Scalar(b)) => (vec![a.clone()], vec![b.clone()]),
        (Value::Scalar(a), Value::Sym(g)) => (vec![a.clone()], g.iter().map(|(_, c)| c.clone()).collect()),
        (Value::Sym(f), Value::Scalar(b)) => (f.iter().map(|(_, c)| c.clone()).collect(), vec![b.clone()]),
    }
}

fn eval_all(cs: &[ExactScalar], q: &BigRational, t: &BigRational) -> Result<Vec<BigRational>> {
    cs.iter().map(|c| c.evaluate(q, t)).collect()
}

fn join(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    parts.join("; ")
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(2..=13);
        if n != 0 && n != d {
            return BigRational::new(BigInt::from(n), BigInt::from(d));
        }
    }
}

/// Seed for one check, derived from the run seed and the check's identity.
pub fn point_seed(seed: u64, statement: &str, params: &str) -> u64 {
    let digest = Sha256::digest(format!("{seed}|{statement}|{params}").as_bytes());
    u64::from_le_bytes(digest[..8].try_into().expect("eight bytes"))
}

pub const SPOT_COUNT: usize = 3;
const MAX_DRAWS: usize = 64;

/// Evaluate both sides at `SPOT_COUNT` random rational points, skipping
/// points where either side has a pole. `t` is drawn only when some
/// coefficient involves it.
pub fn spot_check(lhs: &Value, rhs: &Value, seed: u64) -> Vec<Spot> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let formal = !(lhs.is_t_free() && rhs.is_t_free());
    let (l, r) = aligned(lhs, rhs);
    let mut spots = Vec::new();
    for _ in 0..MAX_DRAWS {
        if spots.len() == SPOT_COUNT {
            break;
        }
        let q = random_rational(&mut rng);
        let t = if formal {
            random_rational(&mut rng)
        } else {
            BigRational::from_integer(BigInt::from(0))
        };
        let (Ok(lv), Ok(rv)) = (eval_all(&l, &q, &t), eval_all(&r, &q, &t)) else {
            continue;
        };
        spots.push(Spot {
            q: q.to_string(),
            t: formal.then(|| t.to_string()),
            agree: lv == rv,
            lhs: join(&lv),
            rhs: join(&rv),
        });
    }
    spots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Value {
        Value::Scalar(t.parse().unwrap())
    }

    #[test]
    fn equal_sides_agree() {
        let spots = spot_check(&s("(1 - q^2)/(1 - q)"), &s("1 + q"), 7);
        assert_eq!(spots.len(), SPOT_COUNT);
        assert!(spots.iter().all(|p| p.agree && p.t.is_none()));
        assert_eq!(spots, spot_check(&s("1 + q"), &s("1 + q"), 7));
    }

    #[test]
    fn different_sides_disagree() {
        let spots = spot_check(&s("1 + q"), &s("1 + q^2"), 1);
        assert!(spots.iter().all(|p| !p.agree));
    }

    #[test]
    fn formal_values_draw_t() {
        let spots = spot_check(&s("1/(1 - q*t)"), &s("1/(1 - q*t)"), 3);
        assert!(spots.iter().all(|p| p.t.is_some() && p.agree));
    }
}
