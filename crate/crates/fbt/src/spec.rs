//! Spec strings: `name`, `name:v1,v2` (positional) or `name:k=v,k=v`.

use fbt_core::pairing::multiplier_param_keys;
use fbt_core::{catalog, fncat::param_keys, multiplier_catalog, BVMultiplier, BoundedFunction, Params};

use crate::error::{CliError, CliResult};

pub fn parse_named(spec: &str, keys_of: impl Fn(&str) -> Option<&'static [&'static str]>) -> CliResult<(String, Params)> {
    let (name, rest) = match spec.split_once(':') {
        Some((n, r)) => (n.trim(), r.trim()),
        None => (spec.trim(), ""),
    };
    let keys = keys_of(name).ok_or_else(|| CliError::Core(fbt_core::Error::UnknownName(name.to_string())))?;
    let mut p = Params::new();
    if rest.is_empty() {
        return Ok((name.to_string(), p));
    }
    for (i, item) in rest.split(',').enumerate() {
        let (k, v) = match item.split_once('=') {
            Some((k, v)) => (k.trim().to_string(), v.trim()),
            None => {
                let k = keys
                    .get(i)
                    .ok_or_else(|| CliError::Usage(format!("`{spec}`: too many positional values for `{name}`")))?;
                (k.to_string(), item.trim())
            }
        };
        let v: f64 = v.parse().map_err(|_| CliError::Usage(format!("`{spec}`: `{v}` is not a number")))?;
        if p.get(&k).is_some() {
            return Err(CliError::Usage(format!("`{spec}`: `{k}` given twice")));
        }
        p.set(&k, v);
    }
    Ok((name.to_string(), p))
}

pub fn function(spec: &str) -> CliResult<BoundedFunction> {
    let (name, p) = parse_named(spec, param_keys)?;
    Ok(catalog(&name, &p)?)
}

pub fn multiplier(spec: &str) -> CliResult<BVMultiplier> {
    let (name, p) = parse_named(spec, multiplier_param_keys)?;
    Ok(multiplier_catalog(&name, &p)?)
}

/// `a:b:n`, `n` evenly spaced points from `a` to `b`.
pub fn grid(spec: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::Usage(format!("grid `{spec}` must look like a:b:n with n ≥ 1"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, n] = parts.as_slice() else { return Err(bad()) };
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if n == 0 || !a.is_finite() || !b.is_finite() || (n == 1 && a != b) {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    // Endpoints exactly, interior points by index.
    Ok((0..n).map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect())
}

/// Comma-separated numbers.
pub fn list(spec: &str) -> CliResult<Vec<f64>> {
    spec.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("`{v}` is not a number"))))
        .collect()
}
