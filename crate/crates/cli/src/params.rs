//! Turning flags (and an optional JSON spec) into core parameter types.

use std::fmt;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use hecke_core::cyclotomic::{CyclotomicSpec, HrpnSpec};
use hecke_core::scalar::{lcm, parse_scalar, CycRat, Scalar};
use hecke_core::shapes::{PlacedSkewShape, ShapeJson};
use serde_json::Value;

/// Marks an error as bad user input (exit code 2).
#[derive(Debug)]
pub struct InvalidInput;

impl fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid input")
    }
}

pub trait InputContext<T> {
    fn input(self) -> Result<T>;
}

impl<T, E> InputContext<T> for std::result::Result<T, E>
where
    E: std::error::Error + Send + Sync + 'static,
{
    fn input(self) -> Result<T> {
        self.map_err(|e| anyhow::Error::new(e).context(InvalidInput))
    }
}

pub fn invalid(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(msg.into()).context(InvalidInput)
}

#[derive(Clone, Debug, Default)]
pub struct Params {
    pub r: Option<usize>,
    pub p: Option<usize>,
    pub n: Option<usize>,
    pub u: Option<Vec<String>>,
    pub x: Option<Vec<String>>,
    pub q: Option<String>,
    pub order: Option<u32>,
}

/// Inline JSON if it starts with `{`, otherwise a file path.
pub fn read_json(arg: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg))
            .with_context(|| format!("reading {arg}"))
            .map_err(|e| e.context(InvalidInput))?
    };
    serde_json::from_str(&text).input()
}

fn strings(v: &Value, key: &str) -> Result<Option<Vec<String>>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Array(a)) => a
            .iter()
            .map(|s| s.as_str().map(str::to_string).ok_or_else(|| invalid(format!("{key} must hold strings"))))
            .collect::<Result<Vec<_>>>()
            .map(Some),
        Some(_) => Err(invalid(format!("{key} must be an array"))),
    }
}

fn uint(v: &Value, key: &str) -> Result<Option<usize>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(x) => x
            .as_u64()
            .map(|k| Some(k as usize))
            .ok_or_else(|| invalid(format!("{key} must be a non-negative integer"))),
    }
}

impl Params {
    /// Flags win over the JSON spec.
    pub fn merge_spec(mut self, spec: &Value) -> Result<Self> {
        self.r = self.r.or(uint(spec, "r")?);
        self.p = self.p.or(uint(spec, "p")?);
        self.n = self.n.or(uint(spec, "n")?);
        self.u = self.u.or(strings(spec, "u")?);
        self.x = self.x.or(strings(spec, "x")?);
        self.order = self.order.or(uint(spec, "order")?.map(|o| o as u32));
        if self.q.is_none() {
            self.q = spec.get("q").and_then(Value::as_str).map(str::to_string);
        }
        Ok(self)
    }

    pub fn n(&self) -> Result<usize> {
        match self.n {
            Some(n) if n >= 1 => Ok(n),
            Some(_) => Err(invalid("n must be at least 1")),
            None => Err(invalid("--n is required")),
        }
    }

    fn base_order(&self) -> u32 {
        let r = self.r.or(self.u.as_ref().map(Vec::len)).unwrap_or(1) as u32;
        let p = self.p.unwrap_or(1) as u32;
        self.order.unwrap_or_else(|| lcm(r.max(1), p.max(1)))
    }

    fn scalar(&self, text: &str, order: u32) -> Result<Scalar> {
        parse_scalar(text, order).input()
    }

    fn q_value(&self, order: u32) -> Result<Option<CycRat>> {
        match self.q.as_deref().map(str::trim) {
            None | Some("q") => Ok(None),
            Some(t) => {
                let s = self.scalar(t, order)?;
                s.as_constant()
                    .cloned()
                    .map(Some)
                    .ok_or_else(|| invalid(format!("q = {t} must be a constant or the literal q")))
            }
        }
    }

    fn check_r(&self, r: usize) -> Result<()> {
        match self.r {
            Some(given) if given != r => Err(invalid(format!("--r {given} disagrees with the parameter list (r = {r})"))),
            _ => Ok(()),
        }
    }

    pub fn cyclotomic(&self) -> Result<CyclotomicSpec> {
        if let Some(u) = &self.u {
            let order = self.base_order();
            self.check_r(u.len())?;
            let u = u.iter().map(|t| self.scalar(t, order)).collect::<Result<Vec<_>>>()?;
            return CyclotomicSpec::new(u, self.q_value(order)?).input();
        }
        if self.x.is_some() || self.p.is_some() {
            return Ok(self.hrpn()?.cyclotomic());
        }
        let r = self.r.ok_or_else(|| invalid("--r or --u is required"))?;
        if r == 0 {
            return Err(invalid("r must be at least 1"));
        }
        let generic = CyclotomicSpec::generic(r);
        CyclotomicSpec::new(generic.u, self.q_value(self.base_order())?).input()
    }

    pub fn hrpn(&self) -> Result<HrpnSpec> {
        let p = self.p.ok_or_else(|| invalid("--p is required"))?;
        if p == 0 {
            return Err(invalid("p must be at least 1"));
        }
        let order = self.base_order();
        let spec = match &self.x {
            Some(x) => {
                let x = x.iter().map(|t| self.scalar(t, order)).collect::<Result<Vec<_>>>()?;
                let spec = HrpnSpec::new(p, x, self.q_value(lcm(order, p as u32))?).input()?;
                self.check_r(spec.r)?;
                spec
            }
            None => {
                let r = self.r.ok_or_else(|| invalid("--r or --x is required"))?;
                let generic = HrpnSpec::generic(r, p).input()?;
                HrpnSpec::new(p, generic.x, self.q_value(lcm(order, p as u32))?).input()?
            }
        };
        Ok(spec)
    }

    /// Order used to parse shape tokens.
    pub fn shape_order(&self, shape: &ShapeJson) -> Result<u32> {
        if let Some(o) = self.order {
            return Ok(o);
        }
        if shape.pages.iter().any(|p| p.token.contains('z')) && self.r.is_none() && self.p.is_none() {
            bail!(invalid("tokens mention z; pass --order"));
        }
        Ok(self.base_order())
    }
}

pub fn read_shape(arg: &str, params: &Params) -> Result<PlacedSkewShape> {
    let value = read_json(arg)?;
    let json: ShapeJson = serde_json::from_value(value).input()?;
    let order = params.shape_order(&json)?;
    PlacedSkewShape::from_json(&json, order).input()
}
