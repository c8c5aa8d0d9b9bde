//! `hkfun`: Hilbert–Kunz densities, F-thresholds and oracle cross-checks
//! from the command line.

mod input;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hkfun::bundle::{
    bundle_alpha, bundle_density, semistability_gap, serre_h1_profile, syzygy_pair_density, HNData, Polarization,
    SemistabilityGap, SerreH1, SyzygySpec,
};
use hkfun::density::{
    frobenius_bracket_scale, regularity_verdict, segre, symmetry_class, PairDensity, RegularityVerdict, SymmetryClass,
};
use hkfun::exactnum::rational::{self, int};
use hkfun::exactnum::{PiecewisePolynomial, Rational};
use hkfun::oracle::{self, ColengthProfile, FrobeniusQuotient, HomogPoly};
use hkfun::trinomial::{classify, f_threshold_with, residue_table_with, Classification, Numerator, ResidueRow, TrinomialCurve};
use hkfun::verify;
use hkfun::volume::{lattice_slice_profile, parameter_density, slice_volume, BoxSliceSpec};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use output::{Format, Output, Render, Table};

#[derive(Parser, Debug)]
#[command(name = "hkfun", version, about = "Exact Hilbert-Kunz densities, F-thresholds and a characteristic-p oracle")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Number of sample points for `--format samples`.
    #[arg(long, global = true, default_value_t = 256)]
    samples: usize,
    /// Fractional digits of the decimal renderings.
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the oracle.
    #[arg(long, global = true, env = "HKFUN_THREADS")]
    threads: Option<usize>,
    /// JSON object of subcommand flags; flags on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Slice volume of a box, optionally with lattice counts at `--q`.
    Volume(VolumeArgs),
    /// Density of a parameter ideal or of a pair file.
    Density(DensityArgs),
    /// Segre product of two pairs.
    Segre(SegreArgs),
    /// Density of a bundle from Harder-Narasimhan data.
    Bundle(BundleArgs),
    /// Density of a syzygy pair on a curve.
    Syzygy(SyzygyArgs),
    /// Classification, residue table or F-threshold of a trinomial curve.
    Trinomial(TrinomialArgs),
    /// Colength profile of a Frobenius quotient over a prime field.
    Oracle(OracleArgs),
    /// Named cross-checks of closed forms against the oracle.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Serialize, Deserialize)]
struct VolumeArgs {
    /// Box edges n1,n2,...
    #[arg(long, value_delimiter = ',')]
    degrees: Option<Vec<u32>>,
    /// Also count lattice points `0 <= a_i < n_i q` per slice.
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Args, Debug, Serialize, Deserialize)]
struct PairView {
    /// Print alpha, threshold, e_HK and the symmetry class instead of the pair.
    #[arg(long)]
    summary: bool,
}

#[derive(Args, Debug, Serialize, Deserialize)]
struct DensityArgs {
    /// Build the density of a parameter ideal from --mult and --degrees.
    #[arg(long)]
    param: bool,
    #[arg(long)]
    mult: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    degrees: Option<Vec<u32>>,
    /// Read the pair from a JSON file instead.
    #[arg(long, conflicts_with = "param")]
    input: Option<PathBuf>,
    /// Density of the Frobenius bracket `I^[q0]`.
    #[arg(long)]
    scale: Option<u64>,
    #[command(flatten)]
    #[serde(flatten)]
    view: PairView,
}

#[derive(Args, Debug, Serialize, Deserialize)]
struct SegreArgs {
    /// A pair as `e:n1,n2,...` or a pair JSON file; give exactly two.
    #[arg(long)]
    pair: Option<Vec<String>>,
    #[command(flatten)]
    #[serde(flatten)]
    view: PairView,
}

#[derive(Args, Debug, Serialize, Deserialize)]
struct BundleArgs {
    /// Strictly decreasing slopes, e.g. `0,-3/2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    slopes: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    ranks: Option<Vec<u64>>,
    /// Degree of the polarization.
    #[arg(long)]
    poldeg: Option<u64>,
    #[arg(long)]
    genus: Option<u64>,
    /// Characteristic-0 slopes for the semistability gap.
    #[arg(long = "char0-slopes", value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(rename = "char0-slopes")]
    char0_slopes: Option<Vec<String>>,
    #[arg(long = "char0-ranks", value_delimiter = ',')]
    #[serde(rename = "char0-ranks")]
    char0_ranks: Option<Vec<u64>>,
    /// Twist `m` for the first-cohomology regimes of a semistable bundle.
    #[arg(long, allow_hyphen_values = true)]
    twist: Option<i64>,
}

#[derive(Args, Debug, Serialize, Deserialize)]
struct SyzygyArgs {
    /// Number of generators.
    #[arg(long)]
    mu: Option<u64>,
    /// Common generator degree.
    #[arg(long)]
    d0: Option<u64>,
    #[arg(long)]
    poldeg: Option<u64>,
    #[arg(long)]
    genus: Option<u64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    slopes: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    ranks: Option<Vec<u64>>,
    #[command(flatten)]
    #[serde(flatten)]
    view: PairView,
}

#[derive(Args, Debug, Serialize, Deserialize)]
struct CurveArgs {
    /// `x^a1 y^a2 + y^b1 z^b2 + z^c1 x^c2` as a1,a2,b1,b2,c1,c2.
    #[arg(long = "typeI", value_delimiter = ',')]
    #[serde(rename = "typeI")]
    type_i: Option<Vec<u32>>,
    /// `x^d + x^a1 y^a2 z^a3 + y^b z^c` as d,a1,a2,a3,b,c.
    #[arg(long = "typeII", value_delimiter = ',')]
    #[serde(rename = "typeII")]
    type_ii: Option<Vec<u32>>,
    /// `x^d + y^d + z^d`.
    #[arg(long)]
    fermat: Option<u32>,
    /// `x^(d-1) y + y^(d-1) z + z^(d-1) x`.
    #[arg(long)]
    cyclic: Option<u32>,
}

impl CurveArgs {
    fn curve(&self) -> Result<Option<TrinomialCurve>> {
        input::curve(&self.type_i, &self.type_ii, self.fermat, self.cyclic)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum NumeratorArg {
    /// `lambda_h (1 - T)`, the default.
    Reduced,
    /// `lambda (1 - T)`.
    Full,
}

#[derive(Args, Debug, Serialize, Deserialize)]
struct TrinomialArgs {
    #[command(flatten)]
    #[serde(flatten)]
    curve: CurveArgs,
    /// Exponent of `I(n) = (x^n, y^n, z^n)`.
    #[arg(long)]
    n: Option<u32>,
    /// Characteristic; gives the F-threshold instead of the residue table.
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, value_enum)]
    numerator: Option<NumeratorArg>,
}

#[derive(Args, Debug, Serialize, Deserialize)]
struct OracleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    curve: CurveArgs,
    /// Hypersurface in the variables x, y, z, w, e.g. `x*y - z^2`.
    #[arg(long, allow_hyphen_values = true)]
    hypersurface: Option<String>,
    /// Number of ambient variables (default 3).
    #[arg(long)]
    vars: Option<usize>,
    /// Comma-separated generators; defaults to the n-th powers of the variables.
    #[arg(long)]
    generators: Option<String>,
    /// Exponent of the default generators `x_i^n`.
    #[arg(long)]
    n: Option<u32>,
    /// Characteristic of the prime field.
    #[arg(long)]
    prime: Option<u64>,
    /// Frobenius power `q = p^e`.
    #[arg(long)]
    q: Option<u64>,
    /// Report only the length of this graded piece.
    #[arg(long)]
    degree: Option<u64>,
    /// Limit alpha of a monomial ideal in a polynomial ring.
    #[arg(long = "monomial-alpha")]
    #[serde(rename = "monomial-alpha")]
    monomial_alpha: bool,
}

#[derive(Args, Debug, Serialize, Deserialize)]
struct VerifyArgs {
    /// Case name, repeatable; see --list.
    #[arg(long)]
    case: Option<Vec<String>>,
    /// Run the whole acceptance suite.
    #[arg(long)]
    all: bool,
    /// List the case names.
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hkfun: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring worker threads")?;
    }
    let config: Option<Map<String, Value>> = cli.config.as_deref().map(input::read_json).transpose()?;
    let config = config.as_ref();
    let output = match cli.command {
        Command::Volume(a) => volume(input::merge(a, config)?)?,
        Command::Density(a) => density(input::merge(a, config)?)?,
        Command::Segre(a) => segre_cmd(input::merge(a, config)?)?,
        Command::Bundle(a) => bundle(input::merge(a, config)?)?,
        Command::Syzygy(a) => syzygy(input::merge(a, config)?)?,
        Command::Trinomial(a) => trinomial(input::merge(a, config)?)?,
        Command::Oracle(a) => oracle_cmd(input::merge(a, config)?)?,
        Command::Verify(a) => verify_cmd(input::merge(a, config)?)?,
    };
    let render = Render { format: cli.format, samples: cli.samples, precision: cli.precision };
    match &cli.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            output.write(render, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            output.write(render, &mut w)?;
        }
    }
    if !output.ok {
        eprintln!("hkfun: verification failed");
    }
    Ok(output.ok)
}

fn volume(a: VolumeArgs) -> Result<Output> {
    let spec = BoxSliceSpec::new(input::required(&a.degrees, "degrees")?)?;
    let v = slice_volume(&spec);
    let sum = Rational::from_integer(spec.edge_sum().into());
    let mut body = json!({ "edges": spec.edges(), "volume": v });
    let table = match a.q {
        Some(q) => {
            let counts = lattice_slice_profile(&spec, q);
            body["q"] = json!(q);
            body["lattice_counts"] = json!(counts.iter().map(|c| c.to_string()).collect::<Vec<_>>());
            let mut t = Table::new(&["m", "count"]);
            for (m, c) in counts.iter().enumerate() {
                t.push(vec![m.to_string(), c.to_string()]);
            }
            t
        }
        None => Table::piecewise(&v),
    };
    Ok(Output::new(body, table).with_curve(v, int(0), sum))
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct PairSummary {
    #[serde(with = "rational")]
    alpha: Rational,
    threshold: Option<String>,
    #[serde(with = "rational")]
    ehk: Rational,
    symmetry: SymmetryClass,
    regularity: RegularityVerdict,
}

fn pair_output(p: PairDensity, view: &PairView) -> Result<Output> {
    let f = p.density().clone();
    let alpha = p.alpha();
    let output = if view.summary {
        let s = PairSummary {
            alpha: alpha.clone(),
            threshold: p.threshold().map(|c| c.to_string()),
            ehk: p.ehk(),
            symmetry: symmetry_class(&p),
            regularity: regularity_verdict(&p),
        };
        let mut t = Table::new(&["alpha", "threshold", "ehk", "symmetry", "regularity"]);
        t.push(vec![
            s.alpha.to_string(),
            s.threshold.clone().unwrap_or_default(),
            s.ehk.to_string(),
            serde_json::to_value(s.symmetry)?.as_str().unwrap_or_default().to_string(),
            serde_json::to_value(s.regularity)?.as_str().unwrap_or_default().to_string(),
        ]);
        Output::new(serde_json::to_value(&s)?, t)
    } else {
        Output::new(serde_json::to_value(&p)?, Table::piecewise(&f))
    };
    Ok(output.with_curve(f, int(0), alpha))
}

fn density(a: DensityArgs) -> Result<Output> {
    let pair = match (&a.input, a.param) {
        (Some(path), _) => input::read_json::<PairDensity>(path)?,
        (None, true) => parameter_density(input::required(&a.mult, "mult")?, &input::required(&a.degrees, "degrees")?)?,
        (None, false) => bail!("give --param with --mult and --degrees, or --input PATH"),
    };
    let pair = match a.scale {
        Some(q0) => frobenius_bracket_scale(&pair, q0)?,
        None => pair,
    };
    pair_output(pair, &a.view)
}

fn segre_cmd(a: SegreArgs) -> Result<Output> {
    let specs = input::required(&a.pair, "pair")?;
    let [left, right] = specs.as_slice() else {
        bail!("segre takes exactly two --pair values, got {}", specs.len());
    };
    pair_output(segre(&input::pair(left)?, &input::pair(right)?)?, &a.view)
}

fn hn_data(slopes: &Option<Vec<String>>, ranks: &Option<Vec<u64>>, flag: &str) -> Result<HNData> {
    let slopes = input::rationals(&input::required(slopes, &format!("{flag}slopes"))?)?;
    Ok(HNData::new(slopes, input::required(ranks, &format!("{flag}ranks"))?)?)
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct BundleReport {
    density: PiecewisePolynomial,
    #[serde(with = "rational")]
    alpha: Rational,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    gap: Option<SemistabilityGap>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    h1: Option<SerreH1>,
}

fn bundle(a: BundleArgs) -> Result<Output> {
    let hn = hn_data(&a.slopes, &a.ranks, "")?;
    let pol = Polarization::new(input::required(&a.poldeg, "poldeg")?, a.genus.unwrap_or(0))?;
    let f = bundle_density(&hn, pol);
    let alpha = bundle_alpha(&hn, pol);
    let gap = match (&a.char0_slopes, &a.char0_ranks) {
        (None, None) => None,
        _ => Some(semistability_gap(&hn_data(&a.char0_slopes, &a.char0_ranks, "char0-")?, &hn, pol)?),
    };
    let h1 = match a.twist {
        Some(m) if hn.is_semistable() => Some(serre_h1_profile(&hn.slope(), hn.total_rank(), pol, m)),
        Some(_) => bail!("--twist needs a single slope (a semistable bundle)"),
        None => None,
    };
    let report = BundleReport { density: f.clone(), alpha: alpha.clone(), gap, h1 };
    Ok(Output::new(serde_json::to_value(&report)?, Table::piecewise(&f)).with_curve(f, int(0), alpha))
}

fn syzygy(a: SyzygyArgs) -> Result<Output> {
    let hn = hn_data(&a.slopes, &a.ranks, "")?;
    let pol = Polarization::new(input::required(&a.poldeg, "poldeg")?, a.genus.unwrap_or(0))?;
    let spec = SyzygySpec::new(input::required(&a.mu, "mu")?, input::required(&a.d0, "d0")?, pol, hn)?;
    pair_output(syzygy_pair_density(&spec)?, &a.view)
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct TrinomialReport {
    curve: TrinomialCurve,
    polynomial: String,
    classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    residue_table: Option<Vec<ResidueRow>>,
}

fn trinomial(a: TrinomialArgs) -> Result<Output> {
    let Some(h) = a.curve.curve()? else {
        bail!("give one of --typeI, --typeII, --fermat, --cyclic");
    };
    let n = a.n.unwrap_or(1);
    let numerator = match a.numerator {
        Some(NumeratorArg::Full) => Numerator::FullIndex,
        _ => Numerator::ReducedIndex,
    };
    if let Some(p) = a.prime {
        let c = f_threshold_with(&h, n, p, numerator)?;
        let mut t = Table::new(&["n", "p", "threshold"]);
        t.push(vec![n.to_string(), p.to_string(), c.to_string()]);
        return Ok(Output::new(json!(c.to_string()), t));
    }
    let classification = classify(&h)?;
    let residue_table = match classification {
        Classification::Regular(_) => Some(residue_table_with(&h, n, numerator)?),
        Classification::Irregular { .. } => None,
    };
    let mut t = Table::new(&["residue", "T", "D", "threshold"]);
    for row in residue_table.iter().flatten() {
        let d = row.taxicab.d.map_or("inf".to_string(), |d| d.to_string());
        t.push(vec![row.residue.to_string(), row.taxicab.t.to_string(), d, row.formula.to_string()]);
    }
    let report = TrinomialReport { curve: h, polynomial: h.to_string(), classification, residue_table };
    Ok(Output::new(serde_json::to_value(&report)?, t))
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct OracleReport {
    hypersurface: Option<String>,
    generators: Vec<String>,
    profile: ColengthProfile,
    /// `l(R/I^[q]) / q^dim`.
    #[serde(with = "rational")]
    ehk_estimate: Rational,
    /// `top_nonzero / q`.
    #[serde(with = "rational")]
    threshold_estimate: Rational,
}

fn oracle_cmd(a: OracleArgs) -> Result<Output> {
    let from_curve = a.curve.curve()?.map(|h| h.hypersurface());
    let hypersurface = match (from_curve, &a.hypersurface) {
        (Some(_), Some(_)) => bail!("give either a curve flag or --hypersurface, not both"),
        (Some(h), None) => Some(h),
        (None, Some(s)) => Some(HomogPoly::parse(a.vars.unwrap_or(3), s)?),
        (None, None) => None,
    };
    let vars = match (&hypersurface, a.vars) {
        (Some(h), _) => h.num_vars(),
        (None, Some(v)) => v,
        (None, None) => 3,
    };
    let generators = match &a.generators {
        Some(list) => list.split(',').map(|g| HomogPoly::parse(vars, g)).collect::<Result<Vec<_>, _>>()?,
        None => HomogPoly::power_generators(vars, a.n.unwrap_or(1))?,
    };
    if a.monomial_alpha {
        if hypersurface.is_some() {
            bail!("--monomial-alpha works in a polynomial ring; drop the hypersurface");
        }
        let exps = generators
            .iter()
            .map(|g| match g.terms().collect::<Vec<_>>().as_slice() {
                [(_, e)] => Ok(e.to_vec()),
                _ => bail!("{g} is not a monomial"),
            })
            .collect::<Result<Vec<_>>>()?;
        let alpha = oracle::monomial_alpha(vars, &exps)?;
        let mut t = Table::new(&["alpha"]);
        t.push(vec![alpha.to_string()]);
        return Ok(Output::new(json!(alpha.to_string()), t));
    }
    let p = input::required(&a.prime, "prime")?;
    let q = input::required(&a.q, "q")?;
    let ring = FrobeniusQuotient::new(p, vars, hypersurface.as_ref(), &generators, q)?;
    if let Some(m) = a.degree {
        let len = ring.piece_length(m);
        let mut t = Table::new(&["degree", "length"]);
        t.push(vec![m.to_string(), len.to_string()]);
        return Ok(Output::new(json!({ "degree": m, "length": len }), t));
    }
    let profile = ring.profile()?;
    let qr = Rational::from_integer(q.into());
    let dim = ring.dimension();
    let volume = (0..dim).fold(int(1), |acc, _| acc * &qr);
    let ehk = Rational::from_integer(profile.total().into()) / volume;
    let threshold = Rational::from_integer(profile.top_nonzero.unwrap_or(0).into()) / &qr;
    let mut t = Table::new(&["degree", "length"]);
    for (m, l) in profile.lengths.iter().enumerate() {
        t.push(vec![m.to_string(), l.to_string()]);
    }
    let mult = hypersurface.as_ref().map_or(1, |h| h.degree());
    let sample = PairDensity::from_colengths(dim, mult, q, &profile.lengths).ok();
    let report = OracleReport {
        hypersurface: hypersurface.as_ref().map(|h| h.to_string()),
        generators: generators.iter().map(|g| g.to_string()).collect(),
        profile,
        ehk_estimate: ehk,
        threshold_estimate: threshold,
    };
    let output = Output::new(serde_json::to_value(&report)?, t);
    Ok(match sample {
        Some(s) => {
            let hi = s.alpha();
            output.with_curve(s.density().clone(), int(0), hi)
        }
        None => output,
    })
}

fn verify_cmd(a: VerifyArgs) -> Result<Output> {
    if a.list {
        let names = verify::case_names();
        let mut t = Table::new(&["case"]);
        for n in &names {
            t.push(vec![n.clone()]);
        }
        return Ok(Output::new(json!(names), t));
    }
    let mut names: Vec<String> = a.case.unwrap_or_default();
    if a.all {
        names.extend(verify::suite().into_iter().map(String::from));
    }
    if names.is_empty() {
        bail!("give --case NAME, --all or --list");
    }
    let reports = names.iter().map(|n| verify::run(n)).collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["case", "check", "passed", "detail"]);
    for r in &reports {
        for c in &r.checks {
            t.push(vec![r.name.clone(), c.label.clone(), c.passed.to_string(), c.detail.clone()]);
        }
    }
    let ok = reports.iter().all(|r| r.passed);
    let mut output = Output::new(serde_json::to_value(&reports)?, t);
    output.ok = ok;
    Ok(output)
}
