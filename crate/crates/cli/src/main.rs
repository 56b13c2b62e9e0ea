use std::path::{Path, PathBuf};
use std::process::ExitCode;

use boundary_braids::boundary::{
    boundary_step, decompose, fix_part, move_part, move_simple_advancing, move_simple_between, realize_wrapping,
    validate_wrapping, wrapping_of_word, BoundarySet, WrappingProfile,
};
use boundary_braids::braidcplx::{build_ball, build_boundary_ball, product_check, split_lift};
use boundary_braids::confspace::{
    boundary_components, build_conf_cycle, column_distance, columns, components, dilated_column_ball, is_spiral,
    DilatedColumnPoint,
};
use boundary_braids::orthoscheme::{
    check_complex, embed_orthoscheme, parse_rational, product_complex, subdivide_cube, DeltaComplex,
    OrderedSimplexCoords,
};
use boundary_braids::{
    abelianize, complements, enumerate_nc, invert, leq_prefix, multiply, normal_form, DualSimpleWord,
    GarsideElement, NoncrossingPartition, Permutation,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bbraid", version, about = "Noncrossing partitions, dual braids and boundary braids")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Noncrossing partition lattice.
    Nc {
        #[command(subcommand)]
        action: NcAction,
    },
    /// Dual braid monoid normal forms and group operations.
    Braid {
        #[command(subcommand)]
        action: BraidAction,
    },
    /// Boundary partitions, wrapping numbers and fix/move splittings.
    Boundary {
        #[command(subcommand)]
        action: BoundaryAction,
    },
    /// Orthoscheme complexes.
    Ortho {
        #[command(subcommand)]
        action: OrthoAction,
    },
    /// Configuration spaces on the cycle and dilated columns.
    Conf {
        #[command(subcommand)]
        action: ConfAction,
    },
    /// Balls in the dual braid complex.
    Cplx {
        #[command(subcommand)]
        action: CplxAction,
    },
}

#[derive(Args)]
struct OptN {
    /// Number of points, needed when an input is a bare block list.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct Base {
    #[arg(long)]
    n: usize,
    /// Boundary set as a comma list, e.g. `2,4,5`.
    #[arg(long = "B", default_value = "")]
    b: String,
}

#[derive(Subcommand)]
enum NcAction {
    /// All noncrossing partitions of `[n]` in canonical order.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    Meet {
        #[command(flatten)]
        n: OptN,
        a: String,
        b: String,
    },
    Join {
        #[command(flatten)]
        n: OptN,
        a: String,
        b: String,
    },
    Leq {
        #[command(flatten)]
        n: OptN,
        a: String,
        b: String,
    },
    Rank {
        #[command(flatten)]
        n: OptN,
        p: String,
    },
    /// The associated noncrossing permutation.
    Perm {
        #[command(flatten)]
        n: OptN,
        p: String,
    },
    /// Left and right complements, inside the maximum unless `--within` is given.
    Complement {
        #[command(flatten)]
        n: OptN,
        p: String,
        #[arg(long)]
        within: Option<String>,
    },
}

#[derive(Args)]
struct Words {
    #[command(flatten)]
    n: OptN,
    /// Word or element, inline JSON or a file path. May be repeated.
    #[arg(long = "word")]
    flagged: Vec<String>,
    positional: Vec<String>,
}

impl Words {
    fn all(&self) -> impl Iterator<Item = &String> {
        self.flagged.iter().chain(&self.positional)
    }
}

#[derive(Subcommand)]
enum BraidAction {
    /// Left normal form.
    Nf(Words),
    /// Product of the inputs, left to right.
    Mul(Words),
    Inv(Words),
    Eq(Words),
    /// Prefix order `g ≤ h`.
    Leq(Words),
    /// Image under the abelianization, the total rank.
    Abel(Words),
    /// A random word of nontrivial simples.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        length: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum BoundaryAction {
    /// Image of the boundary set and wrapping bits of one simple.
    Step {
        #[command(flatten)]
        base: Base,
        p: String,
    },
    /// Wrapping profile and final boundary set of a boundary word.
    Wrap {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        word: String,
    },
    Fix {
        #[command(flatten)]
        base: Base,
        p: String,
    },
    Move {
        #[command(flatten)]
        base: Base,
        p: String,
    },
    Decompose {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        word: String,
    },
    /// A boundary word with the given wrapping numbers.
    Realize {
        #[command(flatten)]
        base: Base,
        /// Wrapping numbers as a comma list.
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    Validate {
        #[command(flatten)]
        base: Base,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// The move simple from `--B` to `--to`, or advancing the points in `--advancing`.
    Movesimple {
        #[command(flatten)]
        base: Base,
        #[arg(long, conflicts_with = "advancing", required_unless_present = "advancing")]
        to: Option<String>,
        #[arg(long)]
        advancing: Option<String>,
    },
}

#[derive(Subcommand)]
enum OrthoAction {
    /// Standard subdivision of the `k`-cube.
    Cube {
        #[arg(long)]
        k: usize,
    },
    Product {
        a: String,
        b: String,
    },
    Check {
        complex: String,
    },
    /// Coordinates of an orthoscheme with the given basis norms.
    Embed {
        /// Comma list of rationals such as `1,1/2,2`, or a JSON object with `basisNorms`.
        norms: String,
    },
}

#[derive(Args)]
struct Labeling {
    #[arg(long, conflicts_with = "unlabeled")]
    labeled: bool,
    #[arg(long)]
    unlabeled: bool,
}

#[derive(Subcommand)]
enum ConfAction {
    Build {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        labeling: Labeling,
    },
    Components {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        labeling: Labeling,
    },
    /// A dilated column ball between two levels, split into ordinary columns.
    Column {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<i64>,
    },
    Distance {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
}

#[derive(Subcommand)]
enum CplxAction {
    Ball {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        radius: usize,
        /// Highest chain-simplex dimension to include.
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
    Boundaryball {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
    /// Product of move simples along a JSON list of advancing sets.
    Split {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        path: String,
    },
    Productcheck {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        radius: usize,
    },
}

enum Failure {
    Usage(&'static str, String),
    Json(String),
    Io(String),
    Domain(boundary_braids::Error),
}

impl From<boundary_braids::Error> for Failure {
    fn from(e: boundary_braids::Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn code(&self) -> &'static str {
        match self {
            Failure::Usage(code, _) => code,
            Failure::Json(_) => "malformed-json",
            Failure::Io(_) => "io",
            Failure::Domain(e) => e.code(),
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(_, m) | Failure::Json(m) | Failure::Io(m) => m.clone(),
            Failure::Domain(e) => e.to_string(),
        }
    }

    fn exit(&self) -> u8 {
        match self {
            Failure::Domain(e) if !e.is_validation() => 1,
            Failure::Io(_) => 1,
            _ => 2,
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Parses inline JSON, falling back to reading a file.
fn load(arg: &str) -> Outcome<Value> {
    match serde_json::from_str(arg) {
        Ok(v) => Ok(v),
        Err(inline) => {
            let path = Path::new(arg);
            if !path.is_file() {
                return Err(Failure::Json(format!("not JSON and not a file: {inline}")));
            }
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::Json(format!("{}: {e}", path.display())))
        }
    }
}

fn decode<T: serde::de::DeserializeOwned>(v: Value) -> Outcome<T> {
    serde_json::from_value(v).map_err(|e| Failure::Json(e.to_string()))
}

fn need_n(n: Option<usize>) -> Outcome<usize> {
    n.ok_or_else(|| Failure::Usage("usage", "a bare block list needs --n".into()))
}

fn check_n(n: Option<usize>, got: usize) -> Outcome<()> {
    match n {
        Some(want) if want != got => Err(boundary_braids::Error::MismatchedN { left: want, right: got }.into()),
        _ => Ok(()),
    }
}

/// A partition given as `{"n","blocks"}`, `{"images"}` or a bare block list.
fn partition_of(v: Value, n: Option<usize>) -> Outcome<NoncrossingPartition> {
    let pi = match v {
        Value::Array(_) => {
            let blocks: Vec<Vec<usize>> = decode(v)?;
            NoncrossingPartition::from_partial_blocks(need_n(n)?, &blocks)?
        }
        Value::Object(ref m) if m.contains_key("images") => {
            let images: Vec<usize> = decode(m["images"].clone())?;
            let sigma = Permutation::from_images(&images)?;
            NoncrossingPartition::from_perm(&sigma)
                .ok_or_else(|| boundary_braids::Error::InvalidPermutation("not a noncrossing permutation".into()))?
        }
        Value::Object(mut m) => {
            if !m.contains_key("n") {
                m.insert("n".into(), json!(need_n(n)?));
            }
            decode(Value::Object(m))?
        }
        _ => return Err(Failure::Json("expected a partition".into())),
    };
    check_n(n, pi.n())?;
    Ok(pi)
}

fn partition(arg: &str, n: Option<usize>) -> Outcome<NoncrossingPartition> {
    partition_of(load(arg)?, n)
}

/// A word given as a word object, an element, a single partition, or a list
/// of factors each given as a block list.
fn word(arg: &str, n: Option<usize>) -> Outcome<DualSimpleWord> {
    let v = load(arg)?;
    let w = match &v {
        Value::Object(m) if m.contains_key("word") => decode(v)?,
        Value::Object(m) if m.contains_key("inf") => decode::<GarsideElement>(v)?.to_word(),
        Value::Object(_) => {
            let pi = partition_of(v, n)?;
            DualSimpleWord::new(pi.n(), vec![pi])?
        }
        Value::Array(items) if items.iter().all(|b| b.as_array().is_some_and(|b| b.iter().all(Value::is_u64))) => {
            let pi = partition_of(v, n)?;
            DualSimpleWord::new(pi.n(), vec![pi])?
        }
        Value::Array(items) => {
            let n = need_n(n)?;
            let factors = items.iter().map(|f| partition_of(f.clone(), Some(n))).collect::<Outcome<Vec<_>>>()?;
            DualSimpleWord::new(n, factors)?
        }
        _ => return Err(Failure::Json("expected a word".into())),
    };
    check_n(n, w.n)?;
    Ok(w)
}

fn elements(words: &Words) -> Outcome<Vec<GarsideElement>> {
    words.all().map(|a| Ok(normal_form(&word(a, words.n.n)?))).collect()
}

fn exactly<const K: usize>(gs: Vec<GarsideElement>) -> Outcome<[GarsideElement; K]> {
    let got = gs.len();
    gs.try_into().map_err(|_| Failure::Usage("usage", format!("expected {K} braid inputs, got {got}")))
}

fn int_list<T: std::str::FromStr>(s: &str) -> Outcome<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Usage("usage", format!("bad list entry {t:?}"))))
        .collect()
}

fn set(n: usize, list: &str) -> Outcome<BoundarySet> {
    Ok(BoundarySet::new(n, &int_list::<usize>(list)?)?)
}

fn base_set(base: &Base) -> Outcome<BoundarySet> {
    set(base.n, &base.b)
}

fn labeled(l: &Labeling) -> bool {
    !l.unlabeled
}

fn complex(arg: &str) -> Outcome<DeltaComplex> {
    let x: DeltaComplex = decode(load(arg)?)?;
    if let Some(v) = check_complex(&x).first() {
        return Err(boundary_braids::Error::InvalidComplex(format!("{:?} at {:?}", v.law, v.simplex)).into());
    }
    Ok(x)
}

fn to_json<T: Serialize>(x: &T) -> Outcome<Value> {
    serde_json::to_value(x).map_err(|e| Failure::Domain(boundary_braids::Error::Internal(e.to_string())))
}

fn run_nc(action: NcAction) -> Outcome<Value> {
    match action {
        NcAction::Enumerate { n } => to_json(&enumerate_nc(n)?),
        NcAction::Meet { n, a, b } => to_json(&partition(&a, n.n)?.meet(&partition(&b, n.n)?)?),
        NcAction::Join { n, a, b } => to_json(&partition(&a, n.n)?.join(&partition(&b, n.n)?)?),
        NcAction::Leq { n, a, b } => Ok(json!({ "leq": partition(&a, n.n)?.leq(&partition(&b, n.n)?)? })),
        NcAction::Rank { n, p } => Ok(json!({ "rank": partition(&p, n.n)?.rank() })),
        NcAction::Perm { n, p } => {
            let sigma = partition(&p, n.n)?.perm();
            Ok(json!({ "cycles": sigma.to_string(), "images": sigma.images() }))
        }
        NcAction::Complement { n, p, within } => {
            let pi = partition(&p, n.n)?;
            let target = match within {
                Some(t) => partition(&t, n.n)?,
                None => NoncrossingPartition::maximum(pi.n()),
            };
            to_json(&complements(&pi, &target)?)
        }
    }
}

fn run_braid(action: BraidAction) -> Outcome<Value> {
    match action {
        BraidAction::Nf(w) => {
            let [g] = exactly(elements(&w)?)?;
            to_json(&g)
        }
        BraidAction::Mul(w) => {
            let gs = elements(&w)?;
            let first = gs.first().cloned().ok_or_else(|| Failure::Usage("usage", "no braid inputs".into()))?;
            let product = gs[1..].iter().try_fold(first, |acc, g| multiply(&acc, g))?;
            to_json(&product)
        }
        BraidAction::Inv(w) => {
            let [g] = exactly(elements(&w)?)?;
            to_json(&invert(&g))
        }
        BraidAction::Eq(w) => {
            let [g, h] = exactly(elements(&w)?)?;
            check_n(Some(g.n()), h.n())?;
            Ok(json!({ "equal": g == h }))
        }
        BraidAction::Leq(w) => {
            let [g, h] = exactly(elements(&w)?)?;
            Ok(json!({ "leq": leq_prefix(&g, &h)? }))
        }
        BraidAction::Abel(w) => {
            let [g] = exactly(elements(&w)?)?;
            Ok(json!({ "abelianization": abelianize(&g) }))
        }
        BraidAction::Random { n, length, seed } => {
            let simples: Vec<NoncrossingPartition> = enumerate_nc(n)?.into_iter().filter(|p| !p.is_discrete()).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let factors = (0..length).map(|_| simples[rng.gen_range(0..simples.len())].clone()).collect();
            to_json(&DualSimpleWord::new(n, factors)?)
        }
    }
}

fn run_boundary(action: BoundaryAction) -> Outcome<Value> {
    match action {
        BoundaryAction::Step { base, p } => {
            let b = base_set(&base)?;
            let step = boundary_step(&partition(&p, Some(base.n))?, &b)?.ok_or(boundary_braids::Error::NotBoundary)?;
            Ok(json!({ "image": to_json(&step.image)?, "bits": step.bits }))
        }
        BoundaryAction::Wrap { base, word: w } => {
            let (profile, image) = wrapping_of_word(&word(&w, Some(base.n))?, &base_set(&base)?)?;
            Ok(json!({ "profile": to_json(&profile)?, "image": to_json(&image)? }))
        }
        BoundaryAction::Fix { base, p } => to_json(&fix_part(&partition(&p, Some(base.n))?, &base_set(&base)?)?),
        BoundaryAction::Move { base, p } => to_json(&move_part(&partition(&p, Some(base.n))?, &base_set(&base)?)?),
        BoundaryAction::Decompose { base, word: w } => {
            to_json(&decompose(&word(&w, Some(base.n))?, &base_set(&base)?)?)
        }
        BoundaryAction::Realize { base, w } => {
            let b = base_set(&base)?;
            let profile = WrappingProfile::new(b.clone(), int_list(&w)?)?;
            to_json(&realize_wrapping(&b, &profile)?)
        }
        BoundaryAction::Validate { base, w } => {
            let b = base_set(&base)?;
            let profile = WrappingProfile::new(b.clone(), int_list(&w)?)?;
            Ok(json!({ "valid": validate_wrapping(&b, &profile)? }))
        }
        BoundaryAction::Movesimple { base, to, advancing } => {
            let b = base_set(&base)?;
            let simple = match (to, advancing) {
                (Some(t), _) => move_simple_between(&b, &set(base.n, &t)?)?,
                (None, Some(a)) => move_simple_advancing(&b, &set(base.n, &a)?)?,
                (None, None) => return Err(Failure::Usage("usage", "give --to or --advancing".into())),
            };
            to_json(&simple)
        }
    }
}

fn run_ortho(action: OrthoAction) -> Outcome<Value> {
    match action {
        OrthoAction::Cube { k } => to_json(&subdivide_cube(k)?),
        OrthoAction::Product { a, b } => to_json(&product_complex(&complex(&a)?, &complex(&b)?)),
        OrthoAction::Check { complex: c } => {
            let x: DeltaComplex = decode(load(&c)?)?;
            let violations = check_complex(&x);
            Ok(json!({ "valid": violations.is_empty(), "violations": to_json(&violations)? }))
        }
        OrthoAction::Embed { norms } => {
            let basis = match serde_json::from_str::<Value>(&norms) {
                Ok(v @ Value::Object(_)) => decode::<OrderedSimplexCoords>(v)?.basis_norms,
                _ => norms.split(',').map(|t| parse_rational(t.trim())).collect::<Result<_, _>>()?,
            };
            to_json(&embed_orthoscheme(&OrderedSimplexCoords::new(basis)?))
        }
    }
}

fn run_conf(action: ConfAction) -> Outcome<Value> {
    match action {
        ConfAction::Build { k, n, labeling } => to_json(&build_conf_cycle(k, n, labeled(&labeling))?),
        ConfAction::Components { k, n, labeling } => {
            let x = build_conf_cycle(k, n, labeled(&labeling))?.complex;
            Ok(json!({
                "components": to_json(&components(&x))?,
                "boundaryComponents": boundary_components(&x),
                "euler": x.euler_characteristic(),
            }))
        }
        ConfAction::Column { k, n, lo, hi } => {
            let hi = hi.unwrap_or(lo + 2 * (k * n) as i64);
            let ball = dilated_column_ball(k, n, lo, hi)?;
            let cols = columns(&ball);
            Ok(json!({
                "ball": to_json(&ball)?,
                "columns": to_json(&cols)?,
                "spirals": cols.iter().all(is_spiral),
            }))
        }
        ConfAction::Distance { k, n, x, y } => {
            let p = DilatedColumnPoint::new(k, n, int_list(&x)?)?;
            let q = DilatedColumnPoint::new(k, n, int_list(&y)?)?;
            Ok(json!({ "distance": column_distance(k, n, &p, &q)? }))
        }
    }
}

fn run_cplx(action: CplxAction) -> Outcome<Value> {
    match action {
        CplxAction::Ball { n, radius, dim } => to_json(&build_ball(n, radius, dim)?),
        CplxAction::Boundaryball { base, radius, dim } => to_json(&build_boundary_ball(&base_set(&base)?, radius, dim)?),
        CplxAction::Split { base, path } => {
            let lists: Vec<Vec<usize>> = decode(load(&path)?)?;
            let sets = lists.iter().map(|m| Ok(BoundarySet::new(base.n, m)?)).collect::<Outcome<Vec<_>>>()?;
            to_json(&split_lift(&base_set(&base)?, &sets)?)
        }
        CplxAction::Productcheck { base, radius } => to_json(&product_check(&base_set(&base)?, radius)?),
    }
}

fn run(cli: Cli) -> Outcome<Value> {
    match cli.command {
        Command::Nc { action } => run_nc(action),
        Command::Braid { action } => run_braid(action),
        Command::Boundary { action } => run_boundary(action),
        Command::Ortho { action } => run_ortho(action),
        Command::Conf { action } => run_conf(action),
        Command::Cplx { action } => run_cplx(action),
    }
}

fn report(f: &Failure) -> ExitCode {
    eprintln!("{}", json!({ "error": f.code(), "message": f.message() }));
    ExitCode::from(f.exit())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    return ExitCode::SUCCESS;
                }
                ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => "unknown-subcommand",
                _ => "usage",
            };
            let message = e.render().to_string();
            return report(&Failure::Usage(code, message.trim().to_string()));
        }
    };
    let out = cli.out.clone();
    let value = match run(cli) {
        Ok(v) => v,
        Err(f) => return report(&f),
    };
    let text = format!("{value}\n");
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                return report(&Failure::Io(format!("{}: {e}", path.display())));
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
