use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use swf_core::applications::{exotic_nuclei_check, NegativeVerdict, PositiveVerdict};
use swf_core::pairing::RelativeInvariantClass;
use swf_core::{
    adjunction_negative_check, adjunction_positive_check, forget, glue, homotopy_group,
    relative_sw_series, swf_brieskorn, swf_lens, BrieskornParams, Error, LensParams, NucleusParams,
    Orientation, SpectrumPresentation,
};

#[derive(Parser)]
#[command(
    name = "swf",
    version,
    about = "Seiberg-Witten Floer spectra in low stems, with exact arithmetic"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Output::Pretty, global = true)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum of L(n, 1) with spin^c structure c_k.
    Lens {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: i64,
    },
    /// Spectrum of ±Σ(2, 3, r).
    Brieskorn {
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, value_parser = parse_orientation)]
        orientation: Orientation,
        /// Print the simplified nonequivariant presentation instead.
        #[arg(long)]
        forget: bool,
    },
    /// π_k or π_k^T of a spectrum file.
    Groups {
        #[command(flatten)]
        input: SpectrumFile,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        equivariant: bool,
    },
    /// Spanier-Whitehead dual of a spectrum file.
    Dualize {
        #[command(flatten)]
        input: SpectrumFile,
    },
    /// Nonequivariant presentation of a spectrum file.
    Forget {
        #[command(flatten)]
        input: SpectrumFile,
    },
    /// Glue a class on a spectrum to a class on its dual.
    Glue {
        #[command(flatten)]
        input: SpectrumFile,
        /// Degree of the class on the spectrum.
        #[arg(long, allow_hyphen_values = true)]
        k1: i64,
        /// Its coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        psi1: Vec<i64>,
        /// The class on the spectrum is equivariant and is forgotten first.
        #[arg(long)]
        equivariant: bool,
        /// Degree of the class on the dual.
        #[arg(long, allow_hyphen_values = true)]
        k2: i64,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        psi2: Vec<i64>,
    },
    /// Obstruction to an exotic nucleus N(2)_{p,q} in K3 # K3 # K3.
    ExoticNuclei {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Adjunction constraint for a sphere of the given self-intersection.
    Adjunction {
        #[arg(long, allow_hyphen_values = true)]
        square: i64,
        /// c([Σ]) for a basic class c; needed when the square is negative.
        #[arg(long, allow_hyphen_values = true)]
        pairing: Option<i64>,
        /// The ambient manifold has b2+ <= 1.
        #[arg(long)]
        small_b_plus: bool,
    },
    /// Relative Seiberg-Witten series of N(2)_{p,q}.
    Series {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
}

#[derive(Args)]
struct SpectrumFile {
    /// Spectrum presentation in the JSON schema printed by `--output json`.
    #[arg(long)]
    spectrum: PathBuf,
}

fn parse_orientation(s: &str) -> Result<Orientation, String> {
    s.parse()
}

enum Failure {
    Usage(String),
    /// Parameters rejected before any computation.
    Invalid(Error),
    Domain(Error),
}

fn validated<T>(r: swf_core::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Invalid)
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// A result with its JSON document and human-readable rendering.
struct Rendered {
    json: String,
    pretty: String,
}

impl Rendered {
    fn new(json: Value, pretty: String) -> Self {
        Rendered {
            json: serde_json::to_string_pretty(&json).expect("values serialize"),
            pretty,
        }
    }
}

fn read_spectrum(path: &Path) -> Result<SpectrumPresentation, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(SpectrumPresentation::from_json(&text)?)
}

fn presentation(p: &SpectrumPresentation) -> Rendered {
    Rendered {
        json: p.to_json(),
        pretty: p.pretty(),
    }
}

fn run(command: Command) -> Result<Rendered, Failure> {
    match command {
        Command::Lens { n, k } => Ok(presentation(&swf_lens(validated(LensParams::new(n, k))?)?)),
        Command::Brieskorn {
            r,
            orientation,
            forget: f,
        } => {
            let p = swf_brieskorn(validated(BrieskornParams::new(r, orientation))?)?;
            Ok(presentation(&if f { forget(&p)? } else { p }))
        }
        Command::Groups {
            input,
            k,
            equivariant,
        } => {
            let p = read_spectrum(&input.spectrum)?;
            let g = homotopy_group(&p, k, equivariant)?;
            let generators: Vec<String> = g.generators().iter().map(|x| x.to_string()).collect();
            let orders: Vec<String> = g.group().orders().iter().map(|o| o.to_string()).collect();
            let name = if equivariant {
                format!("pi_{k}^T")
            } else {
                format!("pi_{k}")
            };
            let mut pretty = format!("{name} = {}", g.group());
            for (i, x) in generators.iter().enumerate() {
                pretty.push_str(&format!("\n  g{i} = {x}"));
            }
            let json = json!({
                "degree": k,
                "equivariant": equivariant,
                "group": g.group().to_string(),
                "orders": orders,
                "generators": generators,
            });
            Ok(Rendered::new(json, pretty))
        }
        Command::Dualize { input } => Ok(presentation(&read_spectrum(&input.spectrum)?.dualize()?)),
        Command::Forget { input } => Ok(presentation(&forget(&read_spectrum(&input.spectrum)?)?)),
        Command::Glue {
            input,
            k1,
            psi1,
            equivariant,
            k2,
            psi2,
        } => {
            let p = read_spectrum(&input.spectrum)?;
            let g1 = homotopy_group(&p, k1, equivariant)?;
            let x = RelativeInvariantClass::new(g1.clone(), g1.element(&psi1)?)?;
            let g2 = homotopy_group(&p.dualize()?, k2, false)?;
            let y = RelativeInvariantClass::new(g2.clone(), g2.element(&psi2)?)?;
            let value = glue(&x, &y)?;
            let json = json!({ "stem": value.stem(), "value": value.coeff(), "group": g_stem(value.stem()) });
            Ok(Rendered::new(
                json,
                format!(
                    "{value} in pi_{}(S^0) = {}",
                    value.stem(),
                    g_stem(value.stem())
                ),
            ))
        }
        Command::ExoticNuclei { p, q } => {
            let r = exotic_nuclei_check(validated(NucleusParams::new(p, q))?)?;
            let solutions: Vec<Value> = r.solutions.iter().map(|s| json!(s)).collect();
            let json = json!({
                "p": p,
                "q": q,
                "x0": r.x0,
                "x1": r.x1,
                "c0_value": r.c0_value,
                "c1_value": r.c1_value,
                "solutions": solutions,
                "verdict": r.verdict.to_string(),
            });
            let pretty = format!(
                "N(2)_{{{p},{q}}}: x0 = {}, x1 = {}, required {} and {} in Z/24, {} compatible classes: {}",
                r.x0,
                r.x1,
                r.c0_value,
                r.c1_value,
                r.solutions.len(),
                r.verdict
            );
            Ok(Rendered::new(json, pretty))
        }
        Command::Adjunction {
            square,
            pairing,
            small_b_plus,
        } => {
            if square > 0 {
                let r = adjunction_positive_check(!small_b_plus, square);
                let verdict = match r.verdict {
                    PositiveVerdict::NoBasicClasses => "NoBasicClasses",
                    PositiveVerdict::NotApplicable => "NotApplicable",
                };
                let mut pretty = verdict.to_string();
                for step in &r.chain {
                    pretty.push_str(&format!("\n  {step}"));
                }
                return Ok(Rendered::new(
                    json!({ "square": square, "verdict": verdict, "chain": r.chain }),
                    pretty,
                ));
            }
            if square == 0 {
                return Err(Failure::Usage("--square must be nonzero".into()));
            }
            let c = pairing.ok_or_else(|| {
                Failure::Usage("--pairing is required for negative squares".into())
            })?;
            let r = adjunction_negative_check(-square, c)?;
            let verdict = match r.verdict {
                NegativeVerdict::Allowed => "Allowed",
                NegativeVerdict::Excluded => "Excluded",
            };
            let json = json!({
                "square": square,
                "pairing": c,
                "j": r.j,
                "k": r.k,
                "index": r.index.to_string(),
                "verdict": verdict,
            });
            Ok(Rendered::new(
                json,
                format!("j = {}, k = {}, i = {}: {verdict}", r.j, r.k, r.index),
            ))
        }
        Command::Series { p, q } => {
            let s = relative_sw_series(validated(NucleusParams::new(p, q))?)?;
            let terms: Vec<Value> = s.terms().map(|(e, c)| json!([e, c.to_string()])).collect();
            Ok(Rendered::new(
                json!({ "p": p, "q": q, "terms": terms }),
                s.to_string(),
            ))
        }
    }
}

fn g_stem(k: i64) -> String {
    swf_core::stems::stable_stem(k).map_or_else(|_| "?".into(), |g| g.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(r) => {
            match cli.output {
                Output::Json => println!("{}", r.json),
                Output::Pretty => println!("{}", r.pretty),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("{}", json!({ "code": e.code(), "message": e.to_string() }));
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("{}", json!({ "code": e.code(), "message": e.to_string() }));
            ExitCode::FAILURE
        }
    }
}
