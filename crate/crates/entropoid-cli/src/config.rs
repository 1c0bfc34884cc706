//! Plain `key=value` files: the optional run configuration and the
//! parameter files written by `params` and read by the other subcommands.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use entropoid::sig::Scheme;
use entropoid::{EntropoidParams, PrimeModulus, Residue};
use num_bigint::BigUint;

use crate::error::CliError;

pub type KeyValues = BTreeMap<String, String>;

pub fn parse_kv(text: &str) -> Result<KeyValues, CliError> {
    let mut out = KeyValues::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("line {}: expected key=value", n + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

pub fn read_kv(path: &Path) -> Result<KeyValues, CliError> {
    parse_kv(&std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?)
}

/// Settings shared by the subcommands. Flags win over the config file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub lambda: Option<u32>,
    pub base: Option<u32>,
    pub scheme: Option<Scheme>,
    pub seed: Option<u64>,
    pub out: Option<String>,
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse().map_err(|_| CliError::Usage(format!("bad value for {key}: {v}")))
}

pub fn parse_scheme(v: &str) -> Result<Scheme, CliError> {
    match v.to_ascii_lowercase().as_str() {
        "cderp" => Ok(Scheme::Cderp),
        "conservative" | "cderp-to-delp" => Ok(Scheme::CderpToDelp),
        _ => Err(CliError::Usage(format!("unknown scheme {v}"))),
    }
}

pub fn scheme_name(s: Scheme) -> &'static str {
    match s {
        Scheme::Cderp => "cderp",
        Scheme::CderpToDelp => "conservative",
    }
}

impl Config {
    pub fn from_kv(kv: &KeyValues) -> Result<Self, CliError> {
        let mut c = Config::default();
        for (k, v) in kv {
            match k.as_str() {
                "lambda" => c.lambda = Some(parse(k, v)?),
                "base" => c.base = Some(parse(k, v)?),
                "scheme" => c.scheme = Some(parse_scheme(v)?),
                "seed" => c.seed = Some(parse(k, v)?),
                "out" => c.out = Some(v.clone()),
                _ => return Err(CliError::Usage(format!("unknown config key {k}"))),
            }
        }
        Ok(c)
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merged(self, over: Config) -> Config {
        Config {
            lambda: over.lambda.or(self.lambda),
            base: over.base.or(self.base),
            scheme: over.scheme.or(self.scheme),
            seed: over.seed.or(self.seed),
            out: over.out.or(self.out),
        }
    }
}

/// Entropoid parameters as stored on disk; element fields are decimal pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamsFile {
    pub p: BigUint,
    pub consts: [BigUint; 4],
    pub g: Option<(BigUint, BigUint)>,
}

impl ParamsFile {
    pub fn from_params<R: Residue>(e: &EntropoidParams<R>, g: Option<(BigUint, BigUint)>) -> Self {
        ParamsFile {
            p: e.p().clone(),
            consts: e.constants(),
            g,
        }
    }

    pub fn bits(&self) -> u32 {
        self.p.bits() as u32
    }

    pub fn to_text(&self) -> String {
        let [a3, a8, b2, b7] = &self.consts;
        let mut s = format!("p={}\na3={a3}\na8={a8}\nb2={b2}\nb7={b7}\n", self.p);
        if let Some((x1, x2)) = &self.g {
            let _ = writeln!(s, "g={x1},{x2}");
        }
        s
    }

    pub fn from_kv(kv: &KeyValues) -> Result<Self, CliError> {
        let get = |k: &str| -> Result<BigUint, CliError> {
            let v = kv.get(k).ok_or_else(|| CliError::Usage(format!("params file lacks {k}")))?;
            parse(k, v)
        };
        let g = kv.get("g").map(|v| parse_pair(v)).transpose()?;
        Ok(ParamsFile {
            p: get("p")?,
            consts: [get("a3")?, get("a8")?, get("b2")?, get("b7")?],
            g,
        })
    }

    pub fn build<R: Residue>(&self) -> Result<EntropoidParams<R>, CliError> {
        let m = PrimeModulus::new(self.p.clone())?;
        let [a3, a8, b2, b7] = &self.consts;
        Ok(EntropoidParams::new(m, a3, a8, b2, b7)?)
    }
}

/// `x1,x2` in decimal.
pub fn parse_pair(v: &str) -> Result<(BigUint, BigUint), CliError> {
    let (a, b) = v
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("expected x1,x2 but got {v}")))?;
    Ok((parse("x1", a.trim())?, parse("x2", b.trim())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_roundtrip_and_errors() {
        let kv = parse_kv("# comment\nlambda = 20\n\nseed=7\n").unwrap();
        let c = Config::from_kv(&kv).unwrap();
        assert_eq!((c.lambda, c.seed), (Some(20), Some(7)));
        assert!(parse_kv("novalue").is_err());
        assert!(Config::from_kv(&parse_kv("colour=red").unwrap()).is_err());
        let over = Config {
            seed: Some(1),
            ..Default::default()
        };
        assert_eq!(c.merged(over).seed, Some(1));
    }

    #[test]
    fn params_text_roundtrip() {
        let e = EntropoidParams::<u64>::from_u64(11, 9, 1, 8, 9).unwrap();
        let f = ParamsFile::from_params(&e, Some((0u32.into(), 3u32.into())));
        let back = ParamsFile::from_kv(&parse_kv(&f.to_text()).unwrap()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.build::<u64>().unwrap().constants(), e.constants());
    }
}
