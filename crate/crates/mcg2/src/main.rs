use clap::{Parser, Subcommand, ValueEnum};
use mcg2::curves::CurveLibrary;
use mcg2::derivation::{self, LineStatus};
use mcg2::dsl;
use mcg2::equivalence::{search_equivalence, verify_certificate, EquivalenceError, MoveCertificate};
use mcg2::factorization::Factorization;
use mcg2::homology::SpMatrix;
use mcg2::mcg::{evaluate_word, Convention, MappingClass};

const EXIT_VERIFIED: i32 = 0;
const EXIT_FALSE: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Standard,
    Mirrored,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Convention {
        match c {
            ConventionArg::Standard => Convention::Standard,
            ConventionArg::Mirrored => Convention::Mirrored,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "mcg2",
    about = "Exact genus-2 mapping class group computations: verify twist words, \
             classify positive factorizations, and check Hurwitz-move equivalences."
)]
struct Cli {
    /// Half-twist handedness convention.
    #[arg(long, value_enum, default_value = "standard", global = true)]
    convention: ConventionArg,

    /// Extra curve definitions (catalog file) layered over the builtin library.
    #[arg(long, global = true)]
    curves: Option<std::path::PathBuf>,

    /// Terse machine-readable key=value output.
    #[arg(long, global = true)]
    machine: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a twist-word expression and test triviality in Mod_2.
    Verify {
        /// Word expression, e.g. "@alpha @D @sigma @E @gamma @F @G".
        expr: Vec<String>,
    },
    /// Report the (n,s) type of a factorization (builtin name or file).
    Classify { factorization: String },
    /// Check or search for a move certificate between two factorizations.
    Equiv {
        src: String,
        dst: String,
        /// Certificate file to verify.
        #[arg(long, conflicts_with = "search")]
        certificate: Option<std::path::PathBuf>,
        /// Search for a certificate instead of checking one.
        #[arg(long)]
        search: bool,
        /// Maximum number of moves after the optional root conjugation.
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Word-length budget for root global conjugations (0 = none).
        #[arg(long, default_value_t = 0)]
        conj_budget: usize,
    },
    /// Verify a derivation script (builtin "section5" or a file).
    Derive { script: String },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let conv: Convention = cli.convention.into();
    let mut lib = CurveLibrary::builtin();
    if let Some(path) = &cli.curves {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return input_error(&format!("cannot read {}: {e}", path.display())),
        };
        if let Err(e) = dsl::apply_catalog(&text, &mut lib) {
            return input_error(&format!("curve catalog: {e}"));
        }
    }
    match &cli.command {
        Command::Verify { expr } => cmd_verify(&expr.join(" "), &lib, conv, cli.machine),
        Command::Classify { factorization } => {
            cmd_classify(factorization, &lib, conv, cli.machine)
        }
        Command::Equiv {
            src,
            dst,
            certificate,
            search,
            depth,
            conj_budget,
        } => cmd_equiv(
            src,
            dst,
            certificate.as_deref(),
            *search,
            *depth,
            *conj_budget,
            &lib,
            conv,
            cli.machine,
        ),
        Command::Derive { script } => cmd_derive(script, &lib, conv, cli.machine),
    }
}

fn input_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_INPUT
}

fn print_sp(label: &str, sp: &SpMatrix, machine: bool) {
    if machine {
        let flat: Vec<String> = sp
            .0
            .iter()
            .flat_map(|row| row.iter().map(|v| v.to_string()))
            .collect();
        println!("{label}={}", flat.join(","));
    } else {
        println!("{label}:");
        for row in sp.0 {
            println!("  [{:>3} {:>3} {:>3} {:>3}]", row[0], row[1], row[2], row[3]);
        }
    }
}

fn describe_class(m: &MappingClass, machine: bool) {
    print_sp("sp", &m.sp, machine);
    let perm: Vec<String> = (1..=6u8)
        .map(|i| m.auto.puncture_perm().image(i).to_string())
        .collect();
    let inner = m.auto.is_inner_trivial();
    if machine {
        println!("perm={}", perm.join(""));
        println!("inner_trivial={inner}");
    } else {
        println!("puncture permutation: [{}]", perm.join(" "));
        println!("inner-trivial downstairs: {}", if inner { "yes" } else { "no" });
    }
    if inner {
        if let Some(w) = m.auto.inner_witness() {
            let key = if machine { "witness" } else { "conjugating witness" };
            let sep = if machine { "=" } else { ": " };
            println!("{key}{sep}{}", dsl::print_word(&w));
        }
    }
}

fn cmd_verify(expr: &str, lib: &CurveLibrary, conv: Convention, machine: bool) -> i32 {
    let resolve = dsl::library_resolver(lib);
    let word = match dsl::parse_word(expr, &resolve) {
        Ok(w) => w,
        Err(e) => return input_error(&e.to_string()),
    };
    let class = evaluate_word(&word, conv);
    if machine {
        println!("length={}", word.len());
    } else {
        println!("word length: {}", word.len());
    }
    describe_class(&class, machine);
    if class.is_identity_mod2() {
        println!("{}", if machine { "result=identity" } else { "result: identity in Mod_2" });
        EXIT_VERIFIED
    } else if class.is_hyperelliptic_involution() {
        println!(
            "{}",
            if machine {
                "result=hyperelliptic_involution"
            } else {
                "result: hyperelliptic involution (trivial downstairs, -I upstairs)"
            }
        );
        EXIT_FALSE
    } else {
        println!("{}", if machine { "result=nontrivial" } else { "result: not the identity" });
        EXIT_FALSE
    }
}

fn load_factorization(
    spec: &str,
    lib: &CurveLibrary,
    conv: Convention,
) -> Result<Factorization, String> {
    let text = match spec {
        "hamada" => mcg2::data::HAMADA_FACT.to_string(),
        "xiao" => mcg2::data::XIAO_FACT.to_string(),
        "bk" => mcg2::data::BK_FACT.to_string(),
        other => std::fs::read_to_string(other)
            .map_err(|e| format!("cannot read {other}: {e}"))?,
    };
    let resolve = dsl::library_resolver(lib);
    let entries =
        dsl::parse_factorization_file(&text, &resolve).map_err(|e| e.to_string())?;
    Factorization::from_words(entries, conv).map_err(|e| e.to_string())
}

fn cmd_classify(spec: &str, lib: &CurveLibrary, conv: Convention, machine: bool) -> i32 {
    let f = match load_factorization(spec, lib, conv) {
        Ok(f) => f,
        Err(e) => return input_error(&e),
    };
    for (i, e) in f.entries().iter().enumerate() {
        let name = e.name.as_deref().unwrap_or("-");
        let class = if e.is_separating() { "separating" } else { "nonseparating" };
        if machine {
            println!("entry{}={name}:{class}", i + 1);
        } else {
            println!("entry {:>2}: {:<12} {}", i + 1, name, class);
        }
    }
    let ty = f.classify();
    let identity = f.is_identity();
    if machine {
        println!("type=({},{})", ty.n, ty.s);
        println!("product_identity={identity}");
    } else {
        println!("type: {ty}");
        println!("product: {}", if identity { "identity in Mod_2" } else { "NOT the identity" });
    }
    if identity {
        EXIT_VERIFIED
    } else {
        EXIT_FALSE
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_equiv(
    src_spec: &str,
    dst_spec: &str,
    certificate: Option<&std::path::Path>,
    search: bool,
    depth: usize,
    conj_budget: usize,
    lib: &CurveLibrary,
    conv: Convention,
    machine: bool,
) -> i32 {
    let (src, dst) = match (
        load_factorization(src_spec, lib, conv),
        load_factorization(dst_spec, lib, conv),
    ) {
        (Ok(s), Ok(d)) => (s, d),
        (Err(e), _) | (_, Err(e)) => return input_error(&e),
    };
    if src.len() != dst.len() || src.classify() != dst.classify() {
        println!(
            "{}",
            if machine {
                "result=inequivalent_type"
            } else {
                "result: not equivalent (lengths or (n,s) types differ)"
            }
        );
        return EXIT_FALSE;
    }
    if let Some(path) = certificate {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return input_error(&format!("cannot read {}: {e}", path.display())),
        };
        let resolve = dsl::library_resolver(lib);
        let cert = match dsl::parse_certificate_file(&text, &resolve) {
            Ok(c) => MoveCertificate::new(c),
            Err(e) => return input_error(&e.to_string()),
        };
        return match verify_certificate(&src, &dst, &cert) {
            Ok(true) => {
                println!("{}", if machine { "result=verified" } else { "result: certificate verified" });
                EXIT_VERIFIED
            }
            Ok(false) => {
                println!(
                    "{}",
                    if machine { "result=mismatch" } else { "result: certificate applies but tuples differ" }
                );
                EXIT_FALSE
            }
            Err(e) => input_error(&e.to_string()),
        };
    }
    if !search {
        return input_error("pass --certificate FILE or --search");
    }
    match search_equivalence(&src, &dst, depth, conj_budget) {
        Ok(Some(cert)) => {
            println!(
                "{}",
                if machine {
                    format!("result=found moves={}", cert.moves.len())
                } else {
                    format!("result: certificate found ({} moves)", cert.moves.len())
                }
            );
            for mv in &cert.moves {
                println!("{}", dsl::print_move(mv));
            }
            EXIT_VERIFIED
        }
        Ok(None) => {
            println!(
                "{}",
                if machine {
                    "result=not_found".to_string()
                } else {
                    "result: no certificate within bounds (not proof of inequivalence)".to_string()
                }
            );
            EXIT_FALSE
        }
        Err(e @ EquivalenceError::ResourceLimit { .. }) => {
            eprintln!("error: {e}");
            EXIT_RESOURCE
        }
        Err(e) => input_error(&e.to_string()),
    }
}

fn cmd_derive(spec: &str, lib: &CurveLibrary, conv: Convention, machine: bool) -> i32 {
    let text = match spec {
        "section5" => mcg2::data::SECTION5_DERIV.to_string(),
        other => match std::fs::read_to_string(other) {
            Ok(t) => t,
            Err(e) => return input_error(&format!("cannot read {other}: {e}")),
        },
    };
    let script = match derivation::parse_script(&text) {
        Ok(s) => s,
        Err(e) => return input_error(&e.to_string()),
    };
    let report = match derivation::verify_script(&script, lib, conv) {
        Ok(r) => r,
        Err(e) => return input_error(&e.to_string()),
    };
    let mut first_failure = None;
    for line in &report.lines {
        let status = match &line.status {
            LineStatus::Defined => "def ",
            LineStatus::Verified => "pass",
            LineStatus::Failed { .. } => "FAIL",
        };
        if machine {
            println!("line{}={}", line.lineno, status.trim());
        } else {
            println!("line {:>3} [{status}] {}", line.lineno, line.text);
        }
        if first_failure.is_none() {
            if let LineStatus::Failed { sp, inner_trivial, perm_trivial } = &line.status {
                first_failure = Some((line.lineno, sp.clone(), *inner_trivial, *perm_trivial));
            }
        }
    }
    match first_failure {
        None => {
            println!(
                "{}",
                if machine {
                    format!("result=pass lines={}", report.lines.len())
                } else {
                    format!("result: all {} lines pass", report.lines.len())
                }
            );
            EXIT_VERIFIED
        }
        Some((lineno, sp, inner, perm)) => {
            if machine {
                println!("result=fail line={lineno}");
            } else {
                println!("result: first failure at line {lineno}");
            }
            print_sp("defect sp", &sp, machine);
            if machine {
                println!("defect_inner_trivial={inner}");
                println!("defect_perm_trivial={perm}");
            } else {
                println!("defect inner-trivial: {}", if inner { "yes" } else { "no" });
                println!("defect permutation trivial: {}", if perm { "yes" } else { "no" });
            }
            EXIT_FALSE
        }
    }
}
