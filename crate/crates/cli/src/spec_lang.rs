//! Parsers for the scriptable problem syntax: potentials are written as
//! `name:key=val,key=val` members joined by `+`, with `file:PATH` loading a
//! two-column `r,V` table; boundary modes as `u0` or `l2:theta=...,r0=...`.

use anyhow::{anyhow, bail, Context, Result};
use uzero::potentials::load_tabulated;
use uzero::{BoundaryMode, PotentialSpec};

/// Parses a full potential expression. `mass` converts the inverse-square
/// `c` shorthand (the dimensionless 2 m alpha) into the raw coefficient.
pub fn parse_potential(text: &str, mass: f64) -> Result<PotentialSpec> {
    let members = text
        .split('+')
        .map(|part| parse_member(part.trim(), mass))
        .collect::<Result<Vec<_>>>()?;
    PotentialSpec::sum_of(members).map_err(|e| anyhow!(e))
}

fn parse_member(text: &str, mass: f64) -> Result<PotentialSpec> {
    if text.is_empty() {
        bail!("empty potential member (check for stray '+')");
    }
    if let Some(path) = text.strip_prefix("file:") {
        let contents = std::fs::read_to_string(path)
            .with_context(|| format!("reading potential table {path}"))?;
        return load_tabulated(&contents, 8).map_err(|e| anyhow!(e));
    }
    let (name, args) = match text.split_once(':') {
        Some((name, args)) => (name, Some(args)),
        None => (text, None),
    };
    let pairs = parse_pairs(args, name)?;
    match name.to_ascii_lowercase().as_str() {
        "coulomb" => Ok(PotentialSpec::Coulomb { z: require(&pairs, "z", name)? }),
        "harmonic" => {
            Ok(PotentialSpec::Harmonic { omega: require(&pairs, "omega", name)? })
        }
        "invsq" => {
            let c = lookup(&pairs, "c");
            let alpha = lookup(&pairs, "alpha");
            match (c, alpha) {
                (Some(c), None) => {
                    Ok(PotentialSpec::InverseSquare { alpha: c / (2.0 * mass) })
                }
                (None, Some(alpha)) => Ok(PotentialSpec::InverseSquare { alpha }),
                (Some(_), Some(_)) => {
                    bail!("invsq takes either c (2 m alpha) or alpha, not both")
                }
                (None, None) => bail!("invsq needs c (2 m alpha) or alpha"),
            }
        }
        other => bail!(
            "unknown potential '{other}' (expected coulomb, harmonic, invsq, or file:PATH)"
        ),
    }
}

/// Parses `u0`, `l2`, or `l2:theta=...,r0=...` (theta defaults to 1, r0 to 1).
pub fn parse_mode(text: &str) -> Result<BoundaryMode> {
    let (name, args) = match text.split_once(':') {
        Some((name, args)) => (name, Some(args)),
        None => (text, None),
    };
    match name.to_ascii_lowercase().as_str() {
        "u0" => {
            if args.is_some() {
                bail!("mode u0 takes no parameters");
            }
            Ok(BoundaryMode::U0Strict)
        }
        "l2" => {
            let pairs = parse_pairs(args, "l2")?;
            let theta = lookup(&pairs, "theta").unwrap_or(1.0);
            let r0 = lookup(&pairs, "r0").unwrap_or(1.0);
            for (key, _) in &pairs {
                if key != "theta" && key != "r0" {
                    bail!("mode l2 does not take '{key}' (expected theta, r0)");
                }
            }
            Ok(BoundaryMode::L2Only { theta, r0 })
        }
        other => bail!("unknown mode '{other}' (expected u0 or l2:theta=...,r0=...)"),
    }
}

/// Parses a comma-separated float list such as a width or theta sweep.
pub fn parse_float_list(text: &str, what: &str) -> Result<Vec<f64>> {
    let values = text
        .split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<f64>().with_context(|| format!("bad {what} value '{part}'"))
        })
        .collect::<Result<Vec<f64>>>()?;
    if values.is_empty() {
        bail!("need at least one {what} value");
    }
    Ok(values)
}

fn parse_pairs(args: Option<&str>, name: &str) -> Result<Vec<(String, f64)>> {
    let Some(args) = args else { return Ok(Vec::new()) };
    args.split(',')
        .map(|pair| {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| anyhow!("expected key=value in '{name}', got '{pair}'"))?;
            let value: f64 = value
                .trim()
                .parse()
                .with_context(|| format!("bad numeric value for '{key}' in '{name}'"))?;
            Ok((key.trim().to_ascii_lowercase(), value))
        })
        .collect()
}

fn lookup(pairs: &[(String, f64)], key: &str) -> Option<f64> {
    pairs.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
}

fn require(pairs: &[(String, f64)], key: &str, name: &str) -> Result<f64> {
    lookup(pairs, key).ok_or_else(|| anyhow!("{name} needs {key}=<value>"))
}
