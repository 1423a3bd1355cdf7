use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "schurcodes", version, about = "Subcode McEliece keys and the Schur-product closure attack")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair from a GRS or Hermitian code.
    Keygen(KeygenArgs),
    /// Encrypt a message under a public key.
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext with a secret key.
    Decrypt(DecryptArgs),
    /// Attack a public key.
    Attack(AttackArgs),
    /// Run a seeded batch experiment and emit CSV.
    Experiment(ExperimentArgs),
    /// Check the square law and the closure identity on small Hermitian codes.
    Verify(VerifyArgs),
    /// Reproduce a row of the Hermitian attack timing table.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Grs,
    Hermitian,
}

#[derive(Args, Clone, Debug)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Hermitian: curve over GF(q0^2).
    #[arg(long)]
    q0: Option<u32>,
    /// Hermitian: divisor degree.
    #[arg(long)]
    m: Option<i64>,
    /// GRS: field order.
    #[arg(long)]
    q: Option<u32>,
    /// GRS: length.
    #[arg(long)]
    n: Option<usize>,
    /// GRS: dimension.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct KeygenArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Dimension of the public subcode.
    #[arg(long)]
    l: usize,
    /// Overrides the designed error weight.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    seed: u64,
    /// Apply a secret column permutation.
    #[arg(long)]
    permute: bool,
    #[arg(long, default_value = "key.pub")]
    pk: PathBuf,
    #[arg(long, default_value = "key.sec")]
    sk: PathBuf,
}

#[derive(Args)]
struct EncryptArgs {
    #[arg(long)]
    pk: PathBuf,
    /// Message file; a random message is drawn from the seed when absent.
    #[arg(long)]
    msg: Option<PathBuf>,
    /// Where to write the message actually encrypted.
    #[arg(long)]
    msg_out: Option<PathBuf>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DecryptArgs {
    #[arg(long)]
    sk: PathBuf,
    #[arg(long)]
    ct: PathBuf,
    /// Message file; printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AttackMode {
    Closure,
    Grs,
    Hermitian,
}

#[derive(Args)]
struct AttackArgs {
    #[arg(long)]
    pk: PathBuf,
    #[arg(long, value_enum)]
    mode: AttackMode,
    /// Hermitian mode: divisor degree used to instantiate the decoder.
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    seed: u64,
    /// Shortening trials when the direct closure fails.
    #[arg(long, default_value_t = 8)]
    shortening_trials: usize,
    /// Fresh ciphertexts to decrypt with the recovered decoder.
    #[arg(long, default_value_t = 0)]
    ciphertexts: usize,
    /// Recovered code file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV report; printed to stdout when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Exit nonzero when the attack fails.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Clone)]
struct RunArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Worker threads; rows are written in trial order regardless.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// CSV output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write 0 in the elapsed_ms column.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    #[command(subcommand)]
    kind: ExperimentKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    Random,
    Subcode,
}

#[derive(Subcommand)]
enum ExperimentKind {
    /// Frequency of C^(2) = C(2E) for random subcodes.
    Conjecture1 {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Closure attack on subfield subcodes of random GRS codes.
    Subfield {
        #[arg(long, default_value_t = 16)]
        q: u32,
        #[arg(long, default_value_t = 15)]
        n: usize,
        #[arg(long, default_value_t = 11)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        subfield: u32,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Square dimensions of random codes or of structured subcodes.
    Distinguisher {
        #[arg(long, value_enum)]
        source: SourceArg,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Closure of random codes.
    RandomControl {
        #[arg(long, default_value_t = 16)]
        q: u32,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        l: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Full key recovery and decryption trials.
    Attack {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 10)]
        ciphertexts: usize,
        #[arg(long, default_value_t = 8)]
        shortening_trials: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Include q0 = 4.
    #[arg(long)]
    slow: bool,
    /// Corrupt one computed code (negative control).
    #[arg(long)]
    mutate: bool,
}

#[derive(Args)]
struct ReproduceArgs {
    /// q0 of the table row: 7 or 9.
    #[arg(long, default_value_t = 7)]
    row: u32,
    /// Allow the q0 = 9 row.
    #[arg(long)]
    force: bool,
    #[arg(long, default_value_t = 50)]
    l: usize,
    #[arg(long, default_value_t = 10)]
    ciphertexts: usize,
    #[command(flatten)]
    run: RunArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Keygen(a) => commands::keygen(a),
        Command::Encrypt(a) => commands::encrypt(a),
        Command::Decrypt(a) => commands::decrypt(a),
        Command::Attack(a) => commands::attack(a),
        Command::Experiment(a) => commands::experiment(a),
        Command::Verify(a) => commands::verify(a),
        Command::Reproduce(a) => commands::reproduce(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::FAILURE
        }
    }
}
