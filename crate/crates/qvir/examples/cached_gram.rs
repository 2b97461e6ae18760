//! Persisting Gram matrices: atomic writes, keyed by level, weight and code
//! version. QVIR_CACHE_DIR overrides the directory.

use qvir::cache::GramCache;
use qvir::verma::{gram_uncached, WeightSpec};

fn main() {
    let cache = GramCache::from_env_or(std::env::temp_dir().join("qvir-example-cache"));
    let spec = WeightSpec::AtHrs(2, 1);
    let (g, hit) = cache.get_or_compute(2, &spec, || gram_uncached(2, &spec).unwrap()).unwrap();
    println!("{} (cache hit: {})", cache.path(2, &spec).display(), hit);
    println!("det = {}", g.det());
}
