use std::io::Write;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use arxai_cli::api::{app, AppState};
use arxai_cli::{cmd_corpus_run, cmd_diff, cmd_recommend, cmd_render, cmd_validate, Output, CORPUS_ENV, EXIT_INPUT, EXIT_IO};
use arxai_core::format::{load_corpus, read_corpus_dir};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "arxai", version, about = "Explanation design recommendations for AR scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recommend an explanation design for a scenario file
    Recommend {
        file: PathBuf,
        /// Emit the structured JSON report
        #[arg(long)]
        json: bool,
    },
    /// Parse and validate a scenario file
    Validate { file: PathBuf },
    /// Print only the rendered explanation text
    Render { file: PathBuf },
    /// Golden corpus commands
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
    /// What-if diff between two scenarios
    Diff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Serve the JSON HTTP API
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        bind: IpAddr,
        #[arg(long, env = CORPUS_ENV)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Check every scenario against its golden
    Run {
        #[arg(env = CORPUS_ENV)]
        dir: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn serve(port: u16, bind: IpAddr, corpus: Option<PathBuf>) -> Output {
    let corpus = match corpus {
        None => Vec::new(),
        Some(dir) => {
            let files = match read_corpus_dir(&dir) {
                Ok(f) => f,
                Err(e) => return Output { code: EXIT_IO, stderr: format!("{}: {e}\n", dir.display()), ..Default::default() },
            };
            match load_corpus(&files) {
                Ok(c) => c,
                Err(errors) => {
                    let stderr = errors.iter().map(|e| format!("{e}\n")).collect();
                    return Output { code: EXIT_INPUT, stderr, ..Default::default() };
                }
            }
        }
    };
    let addr = SocketAddr::new(bind, port);
    let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
    rt.block_on(async move {
        let listener = match tokio::net::TcpListener::bind(addr).await {
            Ok(l) => l,
            Err(e) => return Output { code: EXIT_IO, stderr: format!("bind {addr}: {e}\n"), ..Default::default() },
        };
        eprintln!("listening on http://{addr} ({} corpus scenarios)", corpus.len());
        match axum::serve(listener, app(AppState { corpus })).await {
            Ok(()) => Output::default(),
            Err(e) => Output { code: EXIT_IO, stderr: format!("{e}\n"), ..Default::default() },
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Recommend { file, json } => cmd_recommend(&file, json),
        Command::Validate { file } => cmd_validate(&file),
        Command::Render { file } => cmd_render(&file),
        Command::Corpus { command: CorpusCommand::Run { dir, json } } => cmd_corpus_run(&dir, json),
        Command::Diff { a, b, json } => cmd_diff(&a, &b, json),
        Command::Serve { port, bind, corpus } => serve(port, bind, corpus),
    };
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
