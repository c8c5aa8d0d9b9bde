//! Flag and config-file inputs. A config file is a JSON object whose keys
//! are flag names; a flag given on the command line wins over the file.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use hkfun::density::PairDensity;
use hkfun::exactnum::rational::parse_rational;
use hkfun::exactnum::Rational;
use hkfun::trinomial::TrinomialCurve;
use hkfun::volume::parameter_density;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

/// Reads a JSON file, reporting the line and column of a syntax error.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| anyhow!("malformed JSON in {}: {e}", path.display()))
}

/// Fills every flag left unset (null or false) from the config object.
pub fn merge<T: Serialize + DeserializeOwned>(flags: T, config: Option<&Map<String, Value>>) -> Result<T> {
    let Some(config) = config else {
        return Ok(flags);
    };
    let Value::Object(mut merged) = serde_json::to_value(&flags)? else {
        bail!("flag set is not an object");
    };
    for (key, value) in config {
        let Some(slot) = merged.get_mut(key) else {
            bail!("unknown key {key:?} in config file");
        };
        if slot.is_null() || *slot == Value::Bool(false) {
            *slot = value.clone();
        }
    }
    serde_json::from_value(Value::Object(merged)).map_err(|e| anyhow!("invalid config value: {e}"))
}

pub fn rationals(items: &[String]) -> Result<Vec<Rational>> {
    items.iter().map(|s| parse_rational(s).map_err(|e| anyhow!("{e}"))).collect()
}

pub fn required<T: Clone>(value: &Option<T>, flag: &str) -> Result<T> {
    value.clone().ok_or_else(|| anyhow!("missing --{flag}"))
}

/// A pair given as `e:n1,n2,...` (parameter ideal of multiplicity `e`) or
/// as the path of a pair JSON file.
pub fn pair(spec: &str) -> Result<PairDensity> {
    let path = Path::new(spec);
    if path.exists() {
        return read_json(path);
    }
    let (mult, degrees) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("pair {spec:?} is neither a file nor of the form e:n1,n2,..."))?;
    let mult: u64 = mult.trim().parse().with_context(|| format!("multiplicity in {spec:?}"))?;
    let degrees = degrees
        .split(',')
        .map(|n| n.trim().parse::<u32>().with_context(|| format!("degree {n:?} in {spec:?}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(parameter_density(mult, &degrees)?)
}

/// Exactly one of the four curve descriptions.
pub fn curve(
    type_i: &Option<Vec<u32>>,
    type_ii: &Option<Vec<u32>>,
    fermat: Option<u32>,
    cyclic: Option<u32>,
) -> Result<Option<TrinomialCurve>> {
    let given = [type_i.is_some(), type_ii.is_some(), fermat.is_some(), cyclic.is_some()];
    match given.iter().filter(|&&g| g).count() {
        0 => return Ok(None),
        1 => {}
        _ => bail!("give only one of --typeI, --typeII, --fermat, --cyclic"),
    }
    let six = |v: &Vec<u32>, flag: &str| -> Result<[u32; 6]> {
        v.as_slice().try_into().map_err(|_| anyhow!("--{flag} takes six exponents, got {}", v.len()))
    };
    let h = if let Some(v) = type_i {
        let [a1, a2, b1, b2, c1, c2] = six(v, "typeI")?;
        TrinomialCurve::type_i(a1, a2, b1, b2, c1, c2)?
    } else if let Some(v) = type_ii {
        let [d, a1, a2, a3, b, c] = six(v, "typeII")?;
        TrinomialCurve::type_ii(d, a1, a2, a3, b, c)?
    } else if let Some(d) = fermat {
        TrinomialCurve::fermat(d)?
    } else {
        TrinomialCurve::cyclic(cyclic.expect("counted above"))?
    };
    Ok(Some(h))
}
