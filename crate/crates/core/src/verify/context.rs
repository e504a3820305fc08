use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use log::warn;

use super::cache::{Cache, CacheKey};
use crate::error::Result;
use crate::laurent::engine::ExpandOptions;
use crate::laurent::Marginal;
use crate::macdonald::appendix::symmetric_weight;
use crate::macdonald::{macdonald_poly, remember, MacdonaldPoly};
use crate::sym::{Basis, Partition, SymExpansion};
use crate::weight::{gram_schmidt_with, InnerProductConfig, WeightSpec};

type Cell<V> = Arc<OnceLock<Result<Arc<V>>>>;

/// Build-once values shared between concurrent checks.
struct Memo<K, V>(Mutex<HashMap<K, Cell<V>>>);

impl<K: Eq + Hash, V> Default for Memo<K, V> {
    fn default() -> Self {
        Memo(Mutex::new(HashMap::new()))
    }
}

impl<K: Eq + Hash, V> Memo<K, V> {
    fn get(&self, key: K, build: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
        let cell = self.0.lock().expect("memo lock").entry(key).or_default().clone();
        cell.get_or_init(|| build().map(Arc::new)).clone()
    }
}

/// Options and shared state for a verification run.
pub struct Context {
    pub opts: ExpandOptions,
    pub cache: Option<Cache>,
    /// Worker threads; `None` uses the default pool size.
    pub jobs: Option<usize>,
    inner: Memo<(WeightSpec, usize), InnerProductConfig>,
    symmetric: Memo<(usize, usize, usize), Marginal>,
}

impl Context {
    pub fn new(opts: ExpandOptions, cache: Option<Cache>) -> Self {
        Context {
            opts,
            cache,
            jobs: None,
            inner: Memo::default(),
            symmetric: Memo::default(),
        }
    }

    /// Inner product for `spec` on polynomials of degree at most `k` per variable.
    pub fn inner(&self, spec: &WeightSpec, k: usize) -> Result<Arc<InnerProductConfig>> {
        self.inner
            .get((spec.clone(), k), || InnerProductConfig::new(spec, k, self.opts))
    }

    /// Coefficients of `∏_{i≠j} (w_i/w_j; q)_λ` on the box `[-k, k]^n`.
    pub fn symmetric_weight(&self, n: usize, lam: usize, k: usize) -> Result<Arc<Marginal>> {
        self.symmetric.get((n, lam, k), || {
            Marginal::boxed(&symmetric_weight(n, lam), n, k as i32, self.opts)
        })
    }

    fn cached(&self, key: &CacheKey, n: usize, build: impl FnOnce() -> Result<SymExpansion>) -> Result<SymExpansion> {
        if let Some(hit) = self
            .cache
            .as_ref()
            .and_then(|c| c.load_expansion(key, Basis::Monomial, n))
        {
            return Ok(hit);
        }
        let value = build()?;
        if let Some(cache) = &self.cache {
            if let Err(e) = cache.store_expansion(key, &value) {
                warn!("could not write cache entry: {e}");
            }
        }
        Ok(value)
    }

    /// Formal `P_κ` in `n` variables, through the persistent cache.
    pub fn macdonald(&self, kappa: &Partition, n: usize) -> Result<MacdonaldPoly> {
        let key = CacheKey::new("macdonald", kappa, &[n], 0);
        let expansion = self.cached(&key, n, || Ok(macdonald_poly(kappa, n)?.expansion))?;
        let p = MacdonaldPoly {
            kappa: kappa.clone(),
            n,
            expansion,
        };
        remember(p.clone());
        Ok(p)
    }

    /// `p_κ` for `spec`, with the inner product on degree `κ_1`.
    pub fn gram(&self, kappa: &Partition, spec: &WeightSpec) -> Result<SymExpansion> {
        let key = CacheKey::new("gram", kappa, &spec.n, spec.lam);
        self.cached(&key, spec.n0(), || {
            gram_schmidt_with(&*self.inner(spec, kappa.first())?, kappa)
        })
    }
}

impl Default for Context {
    fn default() -> Self {
        Self::new(ExpandOptions::default(), None)
    }
}
