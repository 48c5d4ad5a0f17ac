use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use minusclass_core::adm::{adm_basis, predict, realize, AdmDecomposition, AdmKind, Coords};
use minusclass_core::group::{enumerate_relevant_pairs, Family, GroupModel, MetacyclicParams};
use minusclass_core::json::{
    class_vector_to_json, module_from_json, module_to_json, pairs_from_json, pe_vector_from_json, pe_vector_to_json,
    subgroup_to_json,
};
use minusclass_core::lambda::LambdaModule;
use minusclass_core::lattice::{fingerprint, omega_module, phi, LatticeFactory};
use minusclass_core::verify::{verify, Suite};
use minusclass_core::Error;

#[derive(Parser)]
#[command(name = "minusclass", version, about = "Lattices over Z_p[C_p ⋊ C_r] and admissible class data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct GroupArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    r: u64,
    /// Defaults to the smallest residue of multiplicative order r.
    #[arg(long)]
    s: Option<u64>,
}

impl GroupArgs {
    fn params(self) -> Result<MetacyclicParams, Error> {
        match self.s {
            Some(s) => MetacyclicParams::new(self.p, self.r, s),
            None => MetacyclicParams::with_default_s(self.p, self.r),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    L1,
    L2,
    L3,
    Fp,
    GroupRing,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Classify,
    Monoid,
    Aid,
    Realize,
}

#[derive(Subcommand)]
enum Command {
    /// All 3r indecomposable lattices with their fingerprints.
    Classify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 6)]
        k: u32,
    },
    /// Writes one module in the module JSON format.
    Make {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 6)]
        k: u32,
        #[arg(value_enum)]
        kind: Kind,
        /// Twist index.
        #[arg(long, default_value_t = 0)]
        i: i64,
    },
    /// Multiplicities of L1, L2, L3 in a lattice.
    Fingerprint { file: String },
    /// Φ of a finite module, up to projectives.
    Phi { file: String },
    /// Class of Ω^n of a lattice.
    Omega {
        file: String,
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// Basis of the admissible monoid.
    Adm {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Relevant (D, I) pairs in Γ × ⟨j⟩ with their cases, as a pairs file.
    Pairs {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Predicted class of a list of (D, I) pairs.
    Predict { file: String },
    /// Ramification plan for a pre-shift class vector.
    Realize {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: Option<u64>,
        file: String,
    },
    /// Runs the named checks and prints a report.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 6)]
        k: u32,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PrecisionExhausted { .. } => 3,
        Error::NotAdmissible(_) => 4,
        Error::InvalidParameters(_) | Error::Schema { .. } | Error::InvalidInput(_) | Error::Dimension(_) => 2,
        _ => 1,
    }
}

fn read(file: &str) -> Result<String, Failure> {
    fs::read_to_string(file).map_err(|e| Failure::Io(format!("cannot read {file}: {e}")))
}

fn header(params: MetacyclicParams) -> Value {
    json!({ "p": params.p, "r": params.r, "s": params.s })
}

fn with_header(params: MetacyclicParams, mut v: Value) -> Value {
    if let (Value::Object(m), Value::Object(h)) = (&mut v, header(params)) {
        for (k, x) in h {
            m.insert(k, x);
        }
    }
    v
}

fn module_params(m: &LambdaModule) -> MetacyclicParams {
    m.group().params().expect("modules read from JSON are structured")
}

fn adm_term_json(kind: AdmKind, e: u64, mult: usize) -> Value {
    json!({ "kind": match kind { AdmKind::I => "I", AdmKind::II => "II" }, "e": e, "mult": mult })
}

fn run(cli: Cli) -> Result<Value, Failure> {
    match cli.command {
        Command::Classify { group, k } => {
            let params = group.params()?;
            let f = LatticeFactory::new(params, k)?;
            let r = params.r as usize;
            let mut out = Vec::new();
            for (name, make) in [
                ("L1", LatticeFactory::make_l1 as fn(&LatticeFactory, i64) -> LambdaModule),
                ("L2", LatticeFactory::make_l2),
                ("L3", LatticeFactory::make_l3),
            ] {
                for i in 0..r {
                    let m = make(&f, i as i64);
                    let v = fingerprint(&m)?;
                    let slot = match name {
                        "L1" => &v.a,
                        "L2" => &v.b,
                        _ => &v.c,
                    };
                    if slot[i] != 1 || v.rank(params.p) != m.rank() || v.a.iter().chain(&v.b).chain(&v.c).sum::<usize>() != 1 {
                        return Err(Failure::Verify(format!("{name}^{i} fingerprints to {v}")));
                    }
                    out.push(json!({
                        "name": format!("{name}^{i}"),
                        "module": module_to_json(&m)?,
                        "fingerprint": class_vector_to_json(&v),
                    }));
                }
            }
            Ok(json!({ "header": with_header(params, json!({ "k": k })), "lattices": out }))
        }
        Command::Make { group, k, kind, i } => {
            let f = LatticeFactory::new(group.params()?, k)?;
            let m = match kind {
                Kind::L1 => f.make_l1(i),
                Kind::L2 => f.make_l2(i),
                Kind::L3 => f.make_l3(i),
                Kind::Fp => f.make_fp(i),
                Kind::GroupRing => f.group_ring(),
            };
            Ok(module_to_json(&m)?)
        }
        Command::Fingerprint { file } => {
            let m = module_from_json(&read(&file)?)?;
            Ok(with_header(module_params(&m), class_vector_to_json(&fingerprint(&m)?)))
        }
        Command::Phi { file } => {
            let m = module_from_json(&read(&file)?)?;
            Ok(with_header(module_params(&m), pe_vector_to_json(&phi(&m)?)))
        }
        Command::Omega { file, times } => {
            let mut m = module_from_json(&read(&file)?)?;
            for _ in 0..times {
                m = omega_module(&m)?;
            }
            Ok(with_header(module_params(&m), pe_vector_to_json(&fingerprint(&m)?.strip())))
        }
        Command::Adm { group } => {
            let params = group.params()?;
            let basis: Vec<Value> = adm_basis(params.p, params.r)?
                .iter()
                .map(|b| {
                    let mut t = adm_term_json(b.kind, b.e, 1);
                    t.as_object_mut().expect("object").remove("mult");
                    t["preshift"] = pe_vector_to_json(&b.vector);
                    t["shifted"] = pe_vector_to_json(&b.vector.omega());
                    t
                })
                .collect();
            Ok(json!({ "header": header(params), "size": basis.len(), "basis": basis }))
        }
        Command::Pairs { group } => {
            let params = group.params()?;
            let g = GroupModel::make(Family::G, params);
            let pairs = enumerate_relevant_pairs(&g)?
                .into_iter()
                .map(|pair| {
                    Ok(json!({
                        "D": subgroup_to_json(&g, &pair.d)?,
                        "I": subgroup_to_json(&g, &pair.i)?,
                        "case": pair.case,
                    }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(Value::Array(pairs))
        }
        Command::Predict { file } => {
            let (g, pairs) = pairs_from_json(&read(&file)?)?;
            let pr = predict(&g, &pairs)?;
            Ok(json!({
                "header": header(g.params().expect("structured")),
                "preshift": pe_vector_to_json(&pr.preshift),
                "shifted": pe_vector_to_json(&pr.shifted),
            }))
        }
        Command::Realize { p, s, file } => {
            let v = pe_vector_from_json(&read(&file)?)?;
            let params = GroupArgs { p, r: v.r as u64, s }.params()?;
            let g = Arc::new(GroupModel::make(Family::G, params));
            let plan = realize(&g, &v)?;
            let dec = minusclass_core::adm::adm_membership(p, &v)?;
            let AdmDecomposition { coords, terms } = dec;
            let terms: Vec<Value> = terms.iter().map(|(gen, m)| adm_term_json(gen.kind, gen.e, *m)).collect();
            let witnesses = plan
                .iter()
                .map(|x| {
                    Ok(json!({
                        "D": subgroup_to_json(&g, &x.pair.d)?,
                        "I": subgroup_to_json(&g, &x.pair.i)?,
                        "case": x.pair.case,
                        "witness": x.witness,
                    }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(json!({
                "header": header(params),
                "coords": match coords { Coords::Preshift => "preshift", Coords::Shifted => "shifted" },
                "terms": terms,
                "witnesses": witnesses,
            }))
        }
        Command::Verify { group, k, suite, seed } => {
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Classify => Suite::Classify,
                SuiteArg::Monoid => Suite::Monoid,
                SuiteArg::Aid => Suite::Aid,
                SuiteArg::Realize => Suite::Realize,
            };
            let report = verify(group.p, group.r, group.s, k, suite, seed)?;
            let value = serde_json::to_value(&report).expect("report serializes");
            match report.first_failure() {
                None => Ok(value),
                Some(c) => {
                    emit(&value);
                    Err(Failure::Verify(format!("check {} ({}) failed: expected {}, computed {}", c.criterion, c.name, c.expected, c.computed)))
                }
            }
        }
    }
}

fn emit(v: &Value) {
    let mut out = std::io::stdout().lock();
    // A closed pipe downstream is not an error worth reporting.
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if matches!(e, Error::PrecisionExhausted { .. }) {
                eprintln!("hint: rerun with a larger --k");
            }
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
