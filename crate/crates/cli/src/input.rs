//! State documents and inline state flags.
//!
//! A state document is JSON:
//!
//! ```json
//! { "dims": [2, 2], "amplitudes": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]] }
//! ```
//!
//! Amplitudes are `[re, im]` pairs (a bare number is read as a real
//! amplitude) in row-major order, subsystem A first. With `"basis": "bell"`
//! the document holds the four real Bell-basis coefficients instead, and
//! `dims` must be `[2, 2]`.

use std::f64::consts::PI;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use entangle_core::state::NORMALIZATION_TOL;
use entangle_core::{BellCoefficients, BipartiteState, Complex64};
use serde::Deserialize;

/// Input norm must be within this of 1 unless `--normalize` is given.
pub const DOCUMENT_NORM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum BasisTag {
    #[default]
    Computational,
    Bell,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Real(f64),
    Pair([f64; 2]),
}

impl Amplitude {
    fn to_complex(self) -> Complex64 {
        match self {
            Amplitude::Real(re) => Complex64::new(re, 0.0),
            Amplitude::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub dims: [usize; 2],
    pub amplitudes: Vec<Amplitude>,
    #[serde(default)]
    pub basis: BasisTag,
}

/// A parsed input, kept in the basis it was given in.
#[derive(Debug, Clone, PartialEq)]
pub enum StateInput {
    Computational(BipartiteState),
    Bell(BellCoefficients, BipartiteState),
}

impl StateInput {
    /// The state in the computational basis.
    pub fn state(&self) -> &BipartiteState {
        match self {
            StateInput::Computational(s) | StateInput::Bell(_, s) => s,
        }
    }
}

fn check_norm(norm: f64, normalize: bool) -> Result<()> {
    if norm == 0.0 || !norm.is_finite() {
        bail!("amplitude vector has zero or non-finite norm");
    }
    if !normalize && (norm - 1.0).abs() > DOCUMENT_NORM_TOL {
        bail!("state has norm {norm}, not 1 (pass --normalize to rescale)");
    }
    Ok(())
}

impl StateDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("invalid state document")
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = if path == Path::new("-") {
            std::io::read_to_string(std::io::stdin()).context("reading stdin")?
        } else {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        };
        Self::parse(&text)
    }

    pub fn into_input(self, normalize: bool) -> Result<StateInput> {
        let [da, db] = self.dims;
        match self.basis {
            BasisTag::Computational => {
                let amps: Vec<Complex64> = self.amplitudes.iter().map(|a| a.to_complex()).collect();
                if amps.len() != da * db {
                    bail!(
                        "dims {da}x{db} need {} amplitudes, got {}",
                        da * db,
                        amps.len()
                    );
                }
                let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                check_norm(norm, normalize)?;
                Ok(StateInput::Computational(BipartiteState::new(
                    da, db, amps,
                )?))
            }
            BasisTag::Bell => {
                if self.dims != [2, 2] {
                    bail!("the bell basis is only defined for dims [2, 2]");
                }
                if self.amplitudes.len() != 4 {
                    bail!(
                        "bell documents need 4 coefficients, got {}",
                        self.amplitudes.len()
                    );
                }
                let mut b = [0.0; 4];
                for (slot, a) in b.iter_mut().zip(&self.amplitudes) {
                    let z = a.to_complex();
                    if z.im != 0.0 {
                        bail!("bell coefficients must be real");
                    }
                    *slot = z.re;
                }
                bell_input(b, normalize)
            }
        }
    }
}

pub fn bell_input(b: [f64; 4], normalize: bool) -> Result<StateInput> {
    let norm = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    check_norm(norm, normalize)?;
    let coeffs = if (norm * norm - 1.0).abs() <= NORMALIZATION_TOL {
        BellCoefficients::new(b)?
    } else {
        BellCoefficients::normalized(b)?
    };
    let state = entangle_core::bases::bell_to_computational(&coeffs);
    Ok(StateInput::Bell(coeffs, state))
}

fn parse_reals(list: &str) -> Result<Vec<f64>> {
    list.split(',')
        .map(|t| {
            let t = t.trim();
            parse_number(t).with_context(|| format!("bad amplitude {t:?}"))
        })
        .collect()
}

/// Parses `"2x3"`.
pub fn parse_dims(text: &str) -> Result<(usize, usize)> {
    let (a, b) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| anyhow!("dims must look like 2x2, got {text:?}"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

/// `--amps "1,0,0,1"`: real amplitudes; dims default to the square that fits.
pub fn inline_state(amps: &str, dims: Option<&str>, normalize: bool) -> Result<StateInput> {
    let values = parse_reals(amps)?;
    let (da, db) = match dims {
        Some(d) => parse_dims(d)?,
        None => {
            let d = (values.len() as f64).sqrt().round() as usize;
            if d * d != values.len() {
                bail!(
                    "{} amplitudes do not form a square system; pass --dims",
                    values.len()
                );
            }
            (d, d)
        }
    };
    let amps: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    if amps.len() != da * db {
        bail!(
            "dims {da}x{db} need {} amplitudes, got {}",
            da * db,
            amps.len()
        );
    }
    let norm = values.iter().map(|x| x * x).sum::<f64>().sqrt();
    check_norm(norm, normalize)?;
    Ok(StateInput::Computational(BipartiteState::new(
        da, db, amps,
    )?))
}

/// `--bell "b0,b1,b2,b3"`.
pub fn inline_bell(list: &str, normalize: bool) -> Result<StateInput> {
    let values = parse_reals(list)?;
    let b: [f64; 4] = values
        .try_into()
        .map_err(|v: Vec<f64>| anyhow!("--bell needs 4 coefficients, got {}", v.len()))?;
    bell_input(b, normalize)
}

/// A real number, optionally written with `pi`/`π` and `sqrt(..)`:
/// `0.5`, `pi/6`, `3pi/4`, `-π/2`, `1/sqrt(2)`.
pub fn parse_number(text: &str) -> Result<f64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        bail!("empty number");
    }
    if let Ok(x) = t.parse::<f64>() {
        return Ok(x);
    }
    if let Some(rest) = t.strip_prefix('-') {
        return Ok(-parse_number(rest)?);
    }
    if let Some((num, den)) = split_top_level_div(&t) {
        let d = parse_factor(den)?;
        if d == 0.0 {
            bail!("division by zero in {text:?}");
        }
        return Ok(parse_product(num)? / d);
    }
    parse_product(&t)
}

/// Splits at the last `/` outside parentheses.
fn split_top_level_div(t: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => split = Some(i),
            _ => {}
        }
    }
    split.map(|i| (&t[..i], &t[i + 1..]))
}

fn parse_product(t: &str) -> Result<f64> {
    t.split('*').map(parse_factor).product()
}

fn parse_factor(t: &str) -> Result<f64> {
    if let Ok(x) = t.parse::<f64>() {
        return Ok(x);
    }
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return parse_number(inner);
    }
    if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        return Ok(parse_number(inner)?.sqrt());
    }
    for sym in ["pi", "π"] {
        if let Some(coef) = t.strip_suffix(sym) {
            let c = if coef.is_empty() {
                1.0
            } else {
                parse_factor(coef)?
            };
            return Ok(c * PI);
        }
    }
    if let Some(pos) = t.find("sqrt(") {
        if pos > 0 {
            return Ok(parse_factor(&t[..pos])? * parse_factor(&t[pos..])?);
        }
    }
    bail!("cannot parse {t:?} as a number")
}
