use crate::error::{Error, Result};

/// Largest `N` the sieves accept by default.
pub const DEFAULT_SIEVE_CAP: usize = 100_000_000;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(crate::error::invalid("sieve length must be positive"));
    }
    if n > cap {
        return Err(Error::MemoryCap(format!("sieve of length {n} exceeds the cap {cap}")));
    }
    Ok(())
}

/// `φ(1), …, φ(N)`; entry `k` holds `φ(k + 1)`.
pub fn totient_sieve(n: usize) -> Result<Vec<u32>> {
    totient_sieve_capped(n, DEFAULT_SIEVE_CAP)
}

pub fn totient_sieve_capped(n: usize, cap: usize) -> Result<Vec<u32>> {
    check_cap(n, cap)?;
    if n > u32::MAX as usize {
        return Err(Error::MemoryCap("totients beyond u32 range".into()));
    }
    // Linear sieve: each composite is reached once, through its least prime.
    let mut phi = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    phi[1] = 1;
    for i in 2..=n {
        if phi[i] == 0 {
            phi[i] = (i - 1) as u32;
            primes.push(i as u32);
        }
        for &p in &primes {
            let m = i * p as usize;
            if m > n {
                break;
            }
            if i % p as usize == 0 {
                phi[m] = phi[i] * p;
                break;
            }
            phi[m] = phi[i] * (p - 1);
        }
    }
    phi.remove(0);
    Ok(phi)
}

/// `μ(1), …, μ(N)`; entry `k` holds `μ(k + 1)`.
pub fn mobius_sieve(n: usize) -> Result<Vec<i8>> {
    mobius_sieve_capped(n, DEFAULT_SIEVE_CAP)
}

pub fn mobius_sieve_capped(n: usize, cap: usize) -> Result<Vec<i8>> {
    check_cap(n, cap)?;
    let mut mu = vec![0i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    mu[1] = 1;
    for i in 2..=n {
        if !composite[i] {
            mu[i] = -1;
            primes.push(i);
        }
        for &p in &primes {
            let m = i * p;
            if m > n {
                break;
            }
            composite[m] = true;
            if i % p == 0 {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    mu.remove(0);
    Ok(mu)
}
