//! Subcommand bodies. Each returns the process exit code on success; errors
//! are mapped to [`exit::ERROR`](crate::exit::ERROR) by the binary.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use popmap::criteria::{
    hamming_offdiagonal_check, lz_antidiagonal_check, map_negativity_check_with_tol, DetectionReport, Witness,
};
use popmap::linalg::TOL_PSD;
use popmap::maps::apply_product;
use popmap::states::{self, Bell, IsotropicParams, MixtureSeed};
use popmap::{reproduce, DensityOperator};
use serde_json::{json, Map, Value};

use crate::file::OperatorFile;
use crate::spec::parse_map_spec;
use crate::{exit, CliError, CliResult};

pub const FAMILIES: [&str; 5] = ["horodecki-b", "isotropic", "pure-p", "ghz", "random-msep"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Lz,
    Hamming,
    Map,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lz" => Ok(Method::Lz),
            "hamming" => Ok(Method::Hamming),
            "map" => Ok(Method::Map),
            _ => Err(format!("unknown method `{s}` (expected lz, hamming or map)")),
        }
    }
}

/// `key=value` arguments; every key must be consumed.
struct Params {
    family: String,
    values: BTreeMap<String, String>,
    meta: Map<String, Value>,
}

impl Params {
    fn parse(family: &str, args: &[String]) -> CliResult<Self> {
        let mut values = BTreeMap::new();
        for arg in args {
            let (k, v) = arg
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("parameter `{arg}` is not key=value")))?;
            if values.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(CliError::Usage(format!("parameter `{k}` given twice")));
            }
        }
        Ok(Self {
            family: family.to_string(),
            values,
            meta: Map::new(),
        })
    }

    fn take<T: FromStr>(&mut self, key: &str, default: Option<T>) -> CliResult<T>
    where
        T: Into<Value> + Clone,
    {
        let value = match self.values.remove(key) {
            Some(raw) => raw
                .parse()
                .map_err(|_| CliError::Usage(format!("{}: cannot parse {key}=`{raw}`", self.family)))?,
            None => default.ok_or_else(|| CliError::Usage(format!("{}: missing parameter {key}=", self.family)))?,
        };
        self.meta.insert(key.to_string(), value.clone().into());
        Ok(value)
    }

    fn finish(self) -> CliResult<Map<String, Value>> {
        if let Some(k) = self.values.keys().next() {
            return Err(CliError::Usage(format!("{}: unknown parameter `{k}`", self.family)));
        }
        Ok(self.meta)
    }
}

pub fn gen(family: &str, args: &[String], out: Option<&Path>, stdout: &mut dyn Write) -> CliResult<i32> {
    let mut p = Params::parse(family, args)?;
    let rho: DensityOperator = match family {
        "horodecki-b" => states::horodecki_b(p.take("b", None)?)?,
        "isotropic" => {
            let s = p.take("s", None)?;
            let bell: String = p.take("bell", Some(Bell::PhiPlus.to_string()))?;
            let bell = Bell::from_str(&bell).map_err(CliError::Usage)?;
            states::isotropic(IsotropicParams::new(s, bell))?
        }
        "pure-p" => states::pure_superposition(p.take("p", None)?)?,
        "ghz" => states::ghz(p.take::<u64>("n", None)? as usize)?,
        "random-msep" => {
            let n_qubits = p.take::<u64>("n", None)? as usize;
            let terms = p.take::<u64>("terms", Some(4))? as usize;
            let rng_seed = p.take::<u64>("seed", Some(0))?;
            states::random_multiseparable(MixtureSeed {
                n_qubits,
                terms,
                rng_seed,
            })?
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown family `{other}` (expected one of {})",
                FAMILIES.join(", ")
            )))
        }
    };
    let parameters = p.finish()?;
    let file = OperatorFile::new(rho.into_operator())
        .with_meta("generator", family)
        .with_meta("parameters", parameters);
    emit(&file, out, stdout)?;
    Ok(exit::SUCCESS)
}

pub fn apply(input: &Path, spec: &str, out: Option<&Path>, stdout: &mut dyn Write) -> CliResult<i32> {
    let file = OperatorFile::load(input)?;
    let spec = parse_map_spec(spec, file.operator.n_qubits())?;
    let mapped = apply_product(&file.operator, &spec)?;
    let min = mapped.min_eigenvalue()?;
    writeln!(stdout, "trace: {}", num(mapped.trace())).map_err(stdout_err)?;
    writeln!(stdout, "min_eigenvalue: {}", num(min)).map_err(stdout_err)?;
    if let Some(path) = out {
        let mut result = OperatorFile::new(mapped);
        result.meta = file.meta;
        result.meta.insert("map".into(), Value::String(spec.to_string()));
        result.save(path)?;
    }
    Ok(exit::SUCCESS)
}

pub fn detect(
    input: &Path,
    method: Method,
    spec: Option<&str>,
    tol: Option<f64>,
    stdout: &mut dyn Write,
) -> CliResult<i32> {
    match (method, spec) {
        (Method::Map, None) => return Err(CliError::Usage("method `map` requires --spec".into())),
        (Method::Lz | Method::Hamming, Some(_)) => {
            return Err(CliError::Usage("--spec is only meaningful with method `map`".into()))
        }
        _ => {}
    }
    let file = OperatorFile::load(input)?;
    let rho = DensityOperator::new(file.operator)?;
    let report = match method {
        Method::Lz => lz_antidiagonal_check(&rho),
        Method::Hamming => hamming_offdiagonal_check(&rho)?,
        Method::Map => {
            let spec = parse_map_spec(spec.unwrap_or_default(), rho.n_qubits())?;
            map_negativity_check_with_tol(&rho, &spec, tol.unwrap_or(TOL_PSD))?
        }
    };
    stdout.write_all(render_report(&report).as_bytes()).map_err(stdout_err)?;
    Ok(if report.is_inseparable() {
        exit::DETECTED
    } else {
        exit::INCONCLUSIVE
    })
}

pub fn eigs(input: &Path, stdout: &mut dyn Write) -> CliResult<i32> {
    let file = OperatorFile::load(input)?;
    for v in file.operator.eigenvalues()? {
        writeln!(stdout, "{}", num(v)).map_err(stdout_err)?;
    }
    Ok(exit::SUCCESS)
}

pub fn reproduce(perturbation: f64, stdout: &mut dyn Write) -> CliResult<i32> {
    let report = reproduce::run(reproduce::Options { perturbation })?;
    writeln!(stdout, "{report}").map_err(stdout_err)?;
    Ok(if report.all_passed() {
        exit::SUCCESS
    } else {
        exit::INCONCLUSIVE
    })
}

/// `key: value` lines, stable enough to grep.
pub fn render_report(report: &DetectionReport) -> String {
    let mut lines = vec![
        format!("verdict: {}", report.verdict),
        format!("criterion: {}", report.criterion),
    ];
    if let Some(spec) = &report.spec_used {
        lines.push(format!("spec: {spec}"));
    }
    lines.push(format!("score: {}", num(report.score)));
    match &report.witness {
        None => lines.push("witness: none".into()),
        Some(Witness::OffDiagonal(w)) => {
            lines.push(format!("witness: element ({}, {})", w.a, w.b));
            lines.push(format!("value: {}", complex(w.value)));
            lines.push(format!("magnitude: {}", num(w.value.norm())));
            lines.push(format!("hamming_distance: {}", w.hamming_distance));
            lines.push(format!("bound: {}", w.bound));
        }
        Some(Witness::Eigen {
            min_eigenvalue,
            eigenvector,
        }) => {
            lines.push("witness: eigenvector".into());
            lines.push(format!("min_eigenvalue: {}", num(*min_eigenvalue)));
            let v: Vec<String> = eigenvector.iter().map(|z| complex(*z)).collect();
            lines.push(format!("eigenvector: [{}]", v.join(", ")));
        }
        Some(Witness::QuadraticForm { a, b, value }) => {
            lines.push(format!("witness: quadratic form on ({a}, {b})"));
            lines.push(format!("value: {}", num(*value)));
        }
    }
    let mut s = lines.join("\n");
    s.push('\n');
    s
}

/// Shortest round-trip decimal; exponent form for tiny magnitudes.
pub fn num(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-4 {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn complex(z: Complex64) -> String {
    json!([z.re, z.im]).to_string()
}

fn emit(file: &OperatorFile, out: Option<&Path>, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(path) => file.save(path),
        None => stdout.write_all(file.render()?.as_bytes()).map_err(stdout_err),
    }
}

fn stdout_err(source: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source,
    }
}
