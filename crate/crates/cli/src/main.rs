//! `hamlog` command-line tool.
//!
//! Subcommands:
//!   analyze      principal Hamiltonian, Pauli table, interaction order
//!   branches     exhaustive logarithm-branch search minimizing Pauli weight
//!   variational  multi-start k-local variational fit
//!   couplings    ε = Mα transform between spectra and σ_z couplings
//!
//! Exit codes: 0 success, 2 usage/validation error, 3 numerical failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hamlog::coupling::{couplings_to_spectrum, spectrum_to_couplings, z_string, CouplingVector, SpectrumVector};
use hamlog::matrix::parse_matrix_text;
use hamlog::report::to_json_string;
use hamlog::spectral::{spectral_decompose, MatrixKind};
use hamlog::{
    distance, enumerate_branches, gate_matrix, interaction_order, matrix_exp_hermitian,
    paper_hamiltonian, pauli_decompose, principal_log, variational_fit, Error, GateSpec,
    PauliDecomposition,
};

#[derive(Parser)]
#[command(name = "hamlog", version, about = "Generating-Hamiltonian analysis for small qubit gates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the principal Hamiltonian of a gate, its Pauli decomposition,
    /// interaction order, and eigenphases.
    Analyze {
        /// Gate: identity, identity:<n>, cnot, toffoli, ccx:<n>, file:<path>
        gate: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustively enumerate logarithm branches |n_k| <= bound, minimizing
    /// the Pauli weight of the generator.
    Branches {
        gate: String,
        /// Integer shift bound B; all vectors in [-B, B]^(2^n) are visited.
        #[arg(long, default_value_t = 1)]
        bound: i64,
        /// Haar resamplings of each degenerate eigenbasis block.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Multi-start variational fit of a weight-<=k generator.
    Variational {
        gate: String,
        /// Maximum Pauli weight k of the parameterized generator.
        #[arg(long)]
        locality: usize,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        /// Optimizer iteration cap per restart.
        #[arg(long, default_value_t = 500)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Convert between energy spectra and σ_z-string couplings (ε = Mα).
    Couplings {
        /// Qubit count n; vectors have length 2^n.
        #[arg(long)]
        n: usize,
        /// Comma-separated coupling strengths α.
        #[arg(long)]
        alpha: Option<String>,
        /// Comma-separated energy eigenvalues ε.
        #[arg(long)]
        epsilon: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    output: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum CliError {
    Usage(String),
    Numeric(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ConvergenceFailure { .. } => CliError::Numeric(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}

fn parse_gate(s: &str) -> Result<GateSpec, CliError> {
    let usage = |m: String| CliError::Usage(m);
    let gate = if s == "identity" {
        GateSpec::Identity { qubits: 1 }
    } else if let Some(n) = s.strip_prefix("identity:") {
        let n: usize = n
            .parse()
            .map_err(|_| usage(format!("gate: bad qubit count in {s:?}")))?;
        if !(1..=6).contains(&n) {
            return Err(usage(format!("gate: qubit count {n} out of range 1..=6")));
        }
        GateSpec::Identity { qubits: n }
    } else if s == "cnot" {
        GateSpec::Cnot
    } else if s == "toffoli" {
        GateSpec::Toffoli
    } else if let Some(n) = s.strip_prefix("ccx:") {
        let n: usize = n
            .parse()
            .map_err(|_| usage(format!("gate: bad qubit count in {s:?}")))?;
        if !(2..=6).contains(&n) {
            return Err(usage(format!("gate: ccx qubit count {n} out of range 2..=6")));
        }
        GateSpec::MultiControlledX { qubits: n }
    } else if let Some(path) = s.strip_prefix("file:") {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("gate: cannot read {path:?}: {e}")))?;
        let matrix = parse_matrix_text(&text).map_err(|e| usage(format!("gate: {e}")))?;
        GateSpec::Custom {
            label: s.to_string(),
            matrix,
        }
    } else {
        return Err(usage(format!(
            "gate: unknown gate {s:?} (expected identity, identity:<n>, cnot, toffoli, ccx:<n>, file:<path>)"
        )));
    };
    // Resolve once up front so unitarity of custom matrices fails loudly
    // with the residual named, before any numerics run.
    gate_matrix(&gate).map_err(|e| usage(e.to_string()))?;
    Ok(gate)
}

fn emit(output: &OutputArgs, text: String, envelope: Value) -> Result<(), CliError> {
    let rendered = match output.output {
        Format::Text => text,
        Format::Json => {
            let mut s = to_json_string(&envelope);
            s.push('\n');
            s
        }
    };
    match &output.out {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| CliError::Usage(format!("cannot write {path:?}: {e}"))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn pauli_table_json(d: &PauliDecomposition) -> Value {
    Value::Array(
        d.entries()
            .into_iter()
            .map(|(s, c)| json!({"string": s, "coeff": c}))
            .collect(),
    )
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Analyze { gate, output } => {
            let spec = parse_gate(&gate)?;
            let u = gate_matrix(&spec)?;
            let numeric = |e: Error| CliError::Numeric(e.to_string());
            let decomp = spectral_decompose(&u, MatrixKind::Unitary).map_err(numeric)?;
            let eigenphases = decomp.eigenphases();
            let principal = principal_log(&u).map_err(numeric)?;
            let principal_pauli = pauli_decompose(&principal).map_err(numeric)?;
            let order = interaction_order(&principal_pauli);

            let paper = match paper_hamiltonian(&spec) {
                Some((h, t)) => {
                    let pd = pauli_decompose(&h).map_err(numeric)?;
                    let regen = matrix_exp_hermitian(&h, t).map_err(numeric)?;
                    let residual = distance(&regen, &u).map_err(numeric)?;
                    Some((pd, t, residual))
                }
                None => None,
            };

            let mut text = format!("gate: {}\n", spec.label());
            text.push_str(&format!(
                "eigenphases: {}\n",
                eigenphases
                    .iter()
                    .map(|p| format!("{p:+.10}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            match &paper {
                Some((pd, t, residual)) => {
                    text.push_str(&format!("paper generator: t = {t:.10}, exp(i*t*h) residual = {residual:.3e}\n"));
                    text.push_str("string  paper      principal\n");
                    for (s, c) in pd.entries() {
                        let p: hamlog::PauliString = s.parse().unwrap();
                        text.push_str(&format!(
                            "{s}  {c:+.6}  {:+.6}\n",
                            principal_pauli.coeff(&p)
                        ));
                    }
                }
                None => {
                    text.push_str("string  principal\n");
                    for (s, c) in principal_pauli.entries() {
                        text.push_str(&format!("{s}  {c:+.6}\n"));
                    }
                }
            }
            text.push_str(&format!("order: {order}\n"));

            let envelope = json!({
                "command": "analyze",
                "config": {"gate": spec.label()},
                "result": {
                    "gate": spec.label(),
                    "qubits": u.qubits().map_err(numeric)?,
                    "eigenphases": eigenphases,
                    "principal_pauli": pauli_table_json(&principal_pauli),
                    "order": order,
                    "paper": paper.as_ref().map(|(pd, t, residual)| json!({
                        "t": t,
                        "pauli": pauli_table_json(pd),
                        "verification_residual": residual,
                    })),
                },
            });
            emit(&output, text, envelope)
        }

        Command::Branches {
            gate,
            bound,
            samples,
            seed,
            output,
        } => {
            let spec = parse_gate(&gate)?;
            if bound < 0 {
                return Err(CliError::Usage(format!("--bound must be >= 0, got {bound}")));
            }
            let report = enumerate_branches(&spec, bound, samples, seed).map_err(|e| match e {
                Error::SearchSpaceTooLarge { .. } => CliError::Usage(e.to_string()),
                other => CliError::Numeric(other.to_string()),
            })?;

            let mut text = format!(
                "gate: {}\nbound: {}\nbasis samples: {}\nbranches examined: {}\nmin weight: {}\n",
                report.gate.label(),
                report.bound,
                report.basis_samples,
                report.branches_examined,
                report.min_weight
            );
            text.push_str(&format!(
                "argmin integers: [{}] (basis sample {})\n",
                report
                    .argmin
                    .integers
                    .iter()
                    .map(|k| k.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                report.argmin.basis_sample
            ));
            text.push_str("argmin Pauli decomposition:\n");
            for (s, c) in report.argmin.decomposition.entries() {
                text.push_str(&format!("  {s}  {c:+.6}\n"));
            }

            let envelope = json!({
                "command": "branches",
                "config": {"gate": spec.label(), "bound": bound, "samples": samples, "seed": seed},
                "result": report.to_json(),
            });
            emit(&output, text, envelope)
        }

        Command::Variational {
            gate,
            locality,
            restarts,
            iters,
            seed,
            output,
        } => {
            let spec = parse_gate(&gate)?;
            let qubits = spec.qubits().map_err(|e| CliError::Usage(e.to_string()))?;
            if locality > qubits {
                return Err(CliError::Usage(format!(
                    "--locality {locality} exceeds qubit count {qubits}"
                )));
            }
            if restarts == 0 {
                return Err(CliError::Usage("--restarts must be >= 1".into()));
            }
            if iters == 0 {
                return Err(CliError::Usage("--iters must be >= 1".into()));
            }
            let report = variational_fit(&spec, locality, restarts, iters, seed)
                .map_err(|e| CliError::Numeric(e.to_string()))?;

            let text = format!(
                "gate: {}\nlocality: {}\nparameters: {}\nrestarts: {}\nbest distance: {:.12e}\nhistory: {}\n",
                report.gate.label(),
                report.locality,
                report.parameter_count,
                report.restarts,
                report.best_distance,
                report
                    .history
                    .iter()
                    .map(|d| format!("{d:.6e}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            );

            let envelope = json!({
                "command": "variational",
                "config": {"gate": spec.label(), "locality": locality, "restarts": restarts,
                           "iters": iters, "seed": seed},
                "result": report.to_json(),
            });
            emit(&output, text, envelope)
        }

        Command::Couplings {
            n,
            alpha,
            epsilon,
            output,
        } => {
            if !(1..=6).contains(&n) {
                return Err(CliError::Usage(format!("--n {n} out of range 1..=6")));
            }
            let dim = 1usize << n;
            let (alpha_vec, epsilon_vec) = match (alpha, epsilon) {
                (Some(a), None) => {
                    let a = parse_list(&a, dim)?;
                    let e = couplings_to_spectrum(&CouplingVector::new(n, a.clone()));
                    (a, e.epsilon)
                }
                (None, Some(e)) => {
                    let e = parse_list(&e, dim)?;
                    let a = spectrum_to_couplings(&SpectrumVector::new(n, e.clone()));
                    (a.alpha, e)
                }
                _ => {
                    return Err(CliError::Usage(
                        "provide exactly one of --alpha or --epsilon".into(),
                    ))
                }
            };
            let labels: Vec<String> = (0..dim).map(|k| z_string(n, k).to_string()).collect();

            let mut text = String::from("index  string  alpha            epsilon\n");
            for k in 0..dim {
                text.push_str(&format!(
                    "{k:<5}  {:<6}  {:+.10e}  {:+.10e}\n",
                    labels[k], alpha_vec[k], epsilon_vec[k]
                ));
            }

            let envelope = json!({
                "command": "couplings",
                "config": {"n": n},
                "result": {
                    "n": n,
                    "alpha": alpha_vec,
                    "epsilon": epsilon_vec,
                    "z_strings": labels,
                },
            });
            emit(&output, text, envelope)
        }
    }
}

fn parse_list(s: &str, expected: usize) -> Result<Vec<f64>, CliError> {
    let values: Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let values = values.map_err(|e| CliError::Usage(format!("bad list entry: {e}")))?;
    if values.len() != expected {
        return Err(CliError::Usage(format!(
            "list has {} entries, expected {expected}",
            values.len()
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Usage("list entries must be finite".into()));
    }
    Ok(values)
}
