use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use origami::cylinders::{cylinders_in_direction, ray_modulus, trace_direction_oracle, Cylinder};
use origami::properties::{balance_over, corners_over, finiteness_bound, vorobets_witness};
use origami::search::{corpus_entries, run_survey, save_corpus, SurveyConfig};
use origami::sl2::{apply_matrix, disk_param, orbit};
use origami::{Direction, Matrix2Z, Origami, OrigamiError};

/// `println!` that stays quiet when stdout is closed early, as in `| head`.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "origami",
    version,
    about = "Square-tiled surfaces: orbits, cylinders and balanced heights"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// File holding `h:` and `v:` lines.
    file: Option<PathBuf>,
    /// Right-gluing permutation, in image or cycle notation.
    #[arg(long, requires = "v")]
    h: Option<String>,
    /// Top-gluing permutation, in image or cycle notation.
    #[arg(long, requires = "h")]
    v: Option<String>,
    /// Square count, when fixed points are omitted from cycle notation.
    #[arg(long)]
    n: Option<usize>,
}

impl Input {
    fn load(&self) -> Result<Origami> {
        match (&self.file, &self.h, &self.v) {
            (Some(path), None, None) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                if self.n.is_some() {
                    bail!("--n applies to inline input only");
                }
                Origami::parse(&text).with_context(|| format!("parsing {}", path.display()))
            }
            (None, Some(h), Some(v)) => Ok(Origami::parse_pair(h, v, self.n)?),
            (Some(_), _, _) => bail!("give either a file or --h/--v, not both"),
            _ => bail!("no origami given: pass a file or --h and --v"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Balanced,
    Corners,
    Normal,
    Vorobets,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Balanced => "balanced",
            Property::Corners => "corners",
            Property::Normal => "normal",
            Property::Vorobets => "vorobets",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Square count, stratum, normality and holonomy lattice.
    Info {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// The SL(2,Z)-orbit, or the image under one matrix.
    Orbit {
        #[command(flatten)]
        input: Input,
        /// Apply `a,b,c,d` instead of listing the orbit.
        #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
        matrix: Option<Matrix2Z>,
        #[arg(long)]
        json: bool,
    },
    /// Cylinder decomposition in a rational direction.
    Cylinders {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1,0", value_parser = parse_direction, allow_hyphen_values = true)]
        direction: Direction,
        /// Use the straight-line flow instead of the SL(2,Z) reduction.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide a property; exits 0 when it holds and 1 when it fails.
    Check {
        property: Property,
        #[command(flatten)]
        input: Input,
        /// Direction range for the cylinder search of `vorobets`.
        #[arg(long, default_value_t = 1)]
        max_norm: u32,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate origamis and survey their orbits.
    Search {
        #[arg(long, default_value_t = 8)]
        max_squares: usize,
        #[arg(long, default_value_t = 1)]
        genus_min: usize,
        /// Write the corpus of all surveyed origamis here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Stop before exceeding this many candidate pairs.
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Print timings to standard error.
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        json: bool,
    },
    /// The square-count bound for minimal balanced surfaces of a genus.
    Bound {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        json: bool,
    },
    /// Teichmüller disk coordinates and cylinder moduli along a ray.
    Param {
        /// Euclidean radius in the unit disk, mapped to hyperbolic distance.
        #[arg(long, conflicts_with_all = ["mod0", "t"])]
        r: Option<f64>,
        /// Initial cylinder modulus.
        #[arg(long, requires = "t")]
        mod0: Option<f64>,
        /// Time along the ray.
        #[arg(long, requires = "mod0", allow_hyphen_values = true)]
        t: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_ints(s: &str, count: usize) -> Result<Vec<i64>, String> {
    let xs: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    if xs.len() != count {
        return Err(format!("expected {count} comma-separated integers"));
    }
    Ok(xs)
}

fn parse_direction(s: &str) -> Result<Direction, String> {
    let xs = parse_ints(s, 2)?;
    Direction::new(xs[0], xs[1]).map_err(|e| e.to_string())
}

fn parse_matrix(s: &str) -> Result<Matrix2Z, String> {
    let xs = parse_ints(s, 4)?;
    Matrix2Z::new(xs[0], xs[1], xs[2], xs[3]).map_err(|e| e.to_string())
}

fn pair_json(o: &Origami) -> Value {
    json!({ "h": o.h().one_based(), "v": o.v().one_based() })
}

fn pair_text(o: &Origami) -> String {
    format!("h={} v={}", o.h(), o.v())
}

fn cylinder_json(c: &Cylinder) -> Value {
    json!({
        "width": c.width,
        "height": c.height,
        "area": c.area(),
        "len2_scale": c.len2_scale,
    })
}

fn print_json(v: &Value) {
    say!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn info(o: &Origami, as_json: bool) -> Result<u8> {
    let st = o.stratum()?;
    let normal = o.is_normal();
    let hnf = o.holonomy_lattice();
    if as_json {
        print_json(&json!({
            "n": o.n(),
            "genus": st.genus,
            "zeros": st.zero_orders,
            "m_q": st.m_q,
            "normal": normal,
            "holonomy": hnf,
            "h": o.h().one_based(),
            "v": o.v().one_based(),
        }));
    } else {
        say!(
            "n={} genus={} zeros={:?} normal={}",
            o.n(),
            st.genus,
            st.zero_orders,
            normal
        );
        say!("m_q={}", st.m_q);
        say!("holonomy={hnf}");
    }
    Ok(0)
}

fn orbit_cmd(o: &Origami, matrix: Option<Matrix2Z>, as_json: bool) -> Result<u8> {
    if let Some(m) = matrix {
        let image = apply_matrix(o, &m)?.canonical_form();
        if as_json {
            print_json(&json!({ "matrix": m.to_string(), "image": pair_json(&image) }));
        } else {
            say!("{m}: {}", pair_text(&image));
        }
        return Ok(0);
    }
    let orb = orbit(o);
    let members = orb.sorted_members();
    if as_json {
        print_json(&json!({
            "size": orb.len(),
            "members": members.iter().map(pair_json).collect::<Vec<_>>(),
        }));
    } else {
        say!("orbit size {}", orb.len());
        for m in &members {
            say!("  {}", pair_text(m));
        }
    }
    Ok(0)
}

fn cylinders_cmd(o: &Origami, d: Direction, oracle: bool, as_json: bool) -> Result<u8> {
    let dec = if oracle {
        trace_direction_oracle(o, d)
    } else {
        cylinders_in_direction(o, d)
    };
    let balanced = dec.has_equal_heights();
    if as_json {
        print_json(&json!({
            "direction": [d.dx(), d.dy()],
            "cylinders": dec.cylinders.iter().map(cylinder_json).collect::<Vec<_>>(),
            "balanced": balanced,
        }));
    } else {
        say!("direction ({},{})", d.dx(), d.dy());
        for c in &dec.cylinders {
            say!(
                "  width={} height={} area={} len2_scale={}",
                c.width,
                c.height,
                c.area(),
                c.len2_scale
            );
        }
        say!("balanced={balanced}");
    }
    Ok(0)
}

fn check(o: &Origami, property: Property, max_norm: u32, as_json: bool) -> Result<u8> {
    let orb = orbit(o);
    let (result, witness, text) = match property {
        Property::Balanced => {
            let r = balance_over(&orb);
            match r.witness {
                None => (true, Value::Null, String::new()),
                Some(w) => {
                    let mut heights = [w.first.height, w.second.height];
                    heights.sort_unstable();
                    let text = format!(
                        "member {} has cylinders of heights {} and {}",
                        pair_text(&w.member),
                        heights[0],
                        heights[1]
                    );
                    (
                        false,
                        json!({ "member": pair_json(&w.member), "heights": heights }),
                        text,
                    )
                }
            }
        }
        Property::Corners => match corners_over(&orb)? {
            None => (true, Value::Null, String::new()),
            Some(w) => {
                let row: Vec<usize> = w.row.iter().map(|s| s + 1).collect();
                let text = format!(
                    "member {} has a regular closed geodesic along the bottom of row {:?}",
                    pair_text(&w.member),
                    row
                );
                (
                    false,
                    json!({ "member": pair_json(&w.member), "row": row }),
                    text,
                )
            }
        },
        Property::Normal => (o.is_normal(), Value::Null, String::new()),
        Property::Vorobets => match vorobets_witness(o, max_norm) {
            Ok(w) => {
                let d = w.direction;
                let text = format!(
                    "direction ({},{}) cylinder width={} height={} area={}",
                    d.dx(),
                    d.dy(),
                    w.cylinder.width,
                    w.cylinder.height,
                    w.cylinder.area()
                );
                let mut c = cylinder_json(&w.cylinder);
                c["direction"] = json!([d.dx(), d.dy()]);
                (true, c, text)
            }
            Err(OrigamiError::NoWitness { .. }) => (false, Value::Null, String::new()),
            Err(e) => return Err(e.into()),
        },
    };
    if as_json {
        print_json(&json!({
            "property": property.name(),
            "result": result,
            "witness": witness,
            "orbit_size": orb.len(),
        }));
    } else {
        say!("{}={} orbit_size={}", property.name(), result, orb.len());
        if !text.is_empty() {
            say!("witness: {text}");
        }
    }
    Ok(if result { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn search(
    max_squares: usize,
    genus_min: usize,
    out: Option<PathBuf>,
    jobs: Option<usize>,
    max_nodes: Option<u64>,
    stats: bool,
    as_json: bool,
) -> Result<u8> {
    let config = SurveyConfig {
        n_max: max_squares,
        genus_min,
        jobs,
        max_nodes,
    };
    let report = run_survey(&config)?;
    if as_json {
        say!("{}", report.to_json());
    } else {
        say!("survey n<={} genus>={}", report.n_max, report.genus_min);
        say!("n origamis orbits genus2+ balanced corners normal fraction");
        for c in &report.counts {
            say!(
                "{} {} {} {} {} {} {} {}",
                c.n,
                c.origamis_up_to_iso,
                c.orbits,
                c.genus2plus_orbits,
                c.balanced_orbits,
                c.corners_orbits,
                c.normal_origamis,
                c.balanced_fraction.as_deref().unwrap_or("-")
            );
        }
        say!("balanced orbits: {}", report.balanced.len());
        for b in &report.balanced {
            say!(
                "  n={} size={} genus={} zeros={:?} corners={} normal={} h={:?} v={:?}",
                b.n,
                b.size,
                b.genus,
                b.zeros,
                b.corners,
                b.normal,
                b.h,
                b.v
            );
        }
        say!(
            "implication violations: {}",
            report.implication_violations.len()
        );
        for v in &report.implication_violations {
            say!("  {}: h={:?} v={:?} {}", v.implication, v.h, v.v, v.detail);
        }
        if let Some(t) = &report.truncated {
            say!("TRUNCATED: {t}");
        }
    }
    if stats {
        for s in &report.runtime_stats {
            eprintln!("n={} nodes={} wall_ms={:.1}", s.n, s.nodes, s.wall_ms);
        }
    }
    if let Some(path) = out {
        save_corpus(&corpus_entries(&report.records), &path)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(0)
}

fn bound(genus: usize, as_json: bool) -> Result<u8> {
    let b = finiteness_bound(genus)?;
    let m = 4 * genus - 4;
    let digits = b.decimal_digits();
    if as_json {
        print_json(&json!({
            "genus": genus,
            "m": m,
            "coefficient": b.coefficient.to_string(),
            "exponent": b.exponent.to_string(),
            "decimal_digits": digits,
            "log10": b.log10(),
        }));
    } else {
        say!(
            "genus={genus} m={m} bound={}*2^{}",
            b.coefficient,
            b.exponent
        );
        match digits {
            Some(d) => say!("decimal digits: {d}"),
            None => say!("decimal digits: about {:.0}", b.log10().floor() + 1.0),
        }
    }
    Ok(0)
}

fn param(r: Option<f64>, mod0: Option<f64>, t: Option<f64>, as_json: bool) -> Result<u8> {
    match (r, mod0, t) {
        (Some(r), None, None) => {
            let rho = disk_param(r)?;
            if as_json {
                print_json(&json!({ "r": r, "distance": rho }));
            } else {
                say!("r={r} distance={rho}");
            }
        }
        (None, Some(mod0), Some(t)) => {
            let m = ray_modulus(mod0, t)?;
            if as_json {
                print_json(&json!({
                    "mod0": mod0,
                    "t": t,
                    "modulus": m.modulus,
                    "ext_upper_bound": m.ext_upper_bound,
                }));
            } else {
                say!(
                    "modulus={} ext_upper_bound={}",
                    m.modulus,
                    m.ext_upper_bound
                );
            }
        }
        _ => bail!("give either --r or both --mod0 and --t"),
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Info { input, json } => info(&input.load()?, json),
        Command::Orbit {
            input,
            matrix,
            json,
        } => orbit_cmd(&input.load()?, matrix, json),
        Command::Cylinders {
            input,
            direction,
            oracle,
            json,
        } => cylinders_cmd(&input.load()?, direction, oracle, json),
        Command::Check {
            property,
            input,
            max_norm,
            json,
        } => check(&input.load()?, property, max_norm, json),
        Command::Search {
            max_squares,
            genus_min,
            out,
            jobs,
            max_nodes,
            stats,
            json,
        } => search(max_squares, genus_min, out, jobs, max_nodes, stats, json),
        Command::Bound { genus, json } => bound(genus, json),
        Command::Param { r, mod0, t, json } => param(r, mod0, t, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
