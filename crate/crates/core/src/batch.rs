//! Independent seeded jobs, fanned out over rayon when the `parallel`
//! feature is on. Results come back in seed order either way.

/// Runs `job` for every seed, in parallel if enabled.
pub fn map_seeds<T, F>(seeds: &[u64], job: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        seeds.par_iter().map(|&s| job(s)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seeds_sequential(seeds, job)
    }
}

/// Runs `job` for every seed on the calling thread.
pub fn map_seeds_sequential<T, F>(seeds: &[u64], job: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    seeds.iter().map(|&s| job(s)).collect()
}

/// `count` consecutive seeds starting at `base`.
pub fn seed_range(base: u64, count: usize) -> Vec<u64> {
    (0..count as u64).map(|k| base.wrapping_add(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let seeds = seed_range(u64::MAX - 2, 6);
        assert_eq!(seeds[3], 0);
        let f = |s: u64| s.wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 7;
        assert_eq!(map_seeds(&seeds, f), map_seeds_sequential(&seeds, f));
    }
}
