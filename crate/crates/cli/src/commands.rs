use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use resgt::boolsemi::BoolVec;
use resgt::conditions::{check_d_dis, check_d_rev_via_ball, check_equivalence, max_d};
use resgt::geometry::{construct_grid, construct_symplectic, to_testing_scheme};
use resgt::io::{read_matrix_or_scheme, read_pls, read_vector, write_matrix, write_pls, write_scheme};
use resgt::residuation::TestingScheme;
use resgt::simulation::{run_campaign, write_campaign_csv, CampaignOptions, PatternModel};
use resgt::Error;

use crate::args::{
    CodingArgs, ConstructArgs, ConstructKind, InfoArgs, SimulateArgs, VerifyArgs,
};

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(String, io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Lib(Error::Certification { .. }) => ExitCode::from(1),
            _ => ExitCode::from(2),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(what, e) => write!(f, "{what}: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult = Result<ExitCode, CliError>;

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn stdout_write(bytes: &[u8]) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    out.write_all(bytes)
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Io("stdout".into(), e))
}

fn load_scheme(path: &Path, workers: usize) -> Result<TestingScheme, CliError> {
    Ok(read_matrix_or_scheme(&read_file(path)?, workers)?)
}

fn verdict(holds: bool) -> ExitCode {
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

pub fn construct(args: &ConstructArgs) -> CliResult {
    let workers = args.workers.resolve();
    let (stem, pls, scheme) = match &args.kind {
        ConstructKind::GqW { q } => {
            let gq = construct_symplectic(*q)?;
            (format!("W{q}"), gq.pls().clone(), gq.to_testing_scheme(workers)?)
        }
        ConstructKind::Grid { s } => {
            let gq = construct_grid(*s)?;
            (format!("grid{s}"), gq.pls().clone(), gq.to_testing_scheme(workers)?)
        }
        ConstructKind::FromPls { file } => {
            let pls = read_pls(&read_file(file)?)?;
            let scheme = to_testing_scheme(&pls, workers)?.with_source("file");
            let stem = file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "pls".into());
            (stem, pls, scheme)
        }
    };
    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Io(args.out.display().to_string(), e))?;
    write_file(&args.out.join(format!("{stem}.pls")), write_pls(&pls).as_bytes())?;
    write_file(
        &args.out.join(format!("{stem}.mat")),
        write_matrix(scheme.matrix()).as_bytes(),
    )?;
    write_file(
        &args.out.join(format!("{stem}.scheme")),
        write_scheme(&scheme).as_bytes(),
    )?;
    let d = scheme.certified_d().expect("constructed schemes are certified");
    stdout_write(format!("n={} k={} d={d}\n", scheme.n(), scheme.k()).as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: &VerifyArgs) -> CliResult {
    let workers = args.workers.resolve();
    let scheme = load_scheme(&args.matrix, workers)?;
    let h = scheme.matrix();
    let m = &args.mode;
    if let Some(d) = m.dis {
        let r = check_d_dis(h, d, workers)?;
        stdout_write(r.to_string().as_bytes())?;
        return Ok(verdict(r.holds));
    }
    if let Some(d) = m.rev {
        let r = check_d_rev_via_ball(h, d, workers)?;
        stdout_write(r.to_string().as_bytes())?;
        return Ok(verdict(r.holds));
    }
    if m.max_d {
        stdout_write(format!("{}\n", max_d(h, workers)?).as_bytes())?;
        return Ok(ExitCode::SUCCESS);
    }
    let d = m.equiv.expect("clap enforces one mode");
    let eq = check_equivalence(h, d, workers)?;
    let mut text = String::new();
    for r in &eq.reports {
        text.push_str(&r.to_string());
    }
    text.push_str(&format!("agree {}\n", eq.agree()));
    stdout_write(text.as_bytes())?;
    Ok(verdict(eq.agree()))
}

fn input_vector(arg: &Option<String>) -> Result<BoolVec, CliError> {
    let text = match arg {
        Some(v) => format!("{v}\n"),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io("stdin".into(), e))?;
            s
        }
    };
    Ok(read_vector(&text)?)
}

pub fn encode(args: &CodingArgs) -> CliResult {
    let scheme = load_scheme(&args.matrix, 1)?;
    let y = scheme.encode(&input_vector(&args.vector)?)?;
    stdout_write(format!("{y}\n").as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

pub fn decode(args: &CodingArgs) -> CliResult {
    let scheme = load_scheme(&args.matrix, 1)?;
    let x = scheme.decode(&input_vector(&args.vector)?)?;
    stdout_write(format!("{x}\n").as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

pub fn simulate(args: &SimulateArgs) -> CliResult {
    let workers = args.workers.resolve();
    let scheme = load_scheme(&args.scheme, workers)?;
    let model = match (args.model.fixed_weight, args.model.bernoulli) {
        (Some(w), _) => PatternModel::fixed_weight(w, args.seed),
        (_, Some(p)) => PatternModel::bernoulli(p, args.seed),
        _ => unreachable!("clap enforces one model"),
    };
    let trials = usize::try_from(args.trials)
        .map_err(|_| Error::InvalidParameter("too many trials".into()))?;
    let campaign = run_campaign(
        &scheme,
        &model,
        trials,
        CampaignOptions {
            workers,
            log_limit: args.log_limit,
        },
    )?;
    let mut csv = Vec::new();
    write_campaign_csv(&mut csv, &campaign.log).expect("writing to memory");
    let stats = campaign.stats.to_string();
    match &args.out {
        Some(path) => {
            write_file(path, &csv)?;
            stdout_write(stats.as_bytes())?;
        }
        None => {
            stdout_write(&csv)?;
            eprint!("{stats}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn info(args: &InfoArgs) -> CliResult {
    let scheme = load_scheme(&args.matrix, 1)?;
    let h = scheme.matrix();
    let row_w: Vec<usize> = h.rows().iter().map(BoolVec::weight).collect();
    let col_w: Vec<usize> = (0..h.ncols()).map(|j| h.col(j).weight()).collect();
    let range = |w: &[usize]| {
        format!(
            "{}..{}",
            w.iter().min().copied().unwrap_or(0),
            w.iter().max().copied().unwrap_or(0)
        )
    };
    let mut text = format!("n {}\nk {}\n", scheme.n(), scheme.k());
    if let Some(src) = scheme.source() {
        text.push_str(&format!("source {src}\n"));
    }
    if let Some(d) = scheme.certified_d() {
        text.push_str(&format!("certified_d {d}\n"));
    }
    text.push_str(&format!(
        "zero_rows {}\nrow_weights {}\ncol_weights {}\ntests_per_sample {}\n",
        h.zero_rows().len(),
        range(&row_w),
        range(&col_w),
        scheme.k() as f64 / scheme.n() as f64
    ));
    stdout_write(text.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}
