use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use hopftruss_core::character::CommAlgebra;
use hopftruss_core::group::{group_algebra, GroupRBSystem, DEFAULT_MAX_ORDER};
use hopftruss_core::io::{self, Bundle, Source};
use hopftruss_core::linalg::SparseVec;
use hopftruss_core::pipeline::{self, Decompose};
use hopftruss_core::rbs::RBSystem;
use hopftruss_core::{Error, Report};

#[derive(Parser)]
#[command(
    name = "hopftruss",
    version,
    about = "Exact checks for Rota-Baxter systems of Hopf algebras, groups and Lie algebras"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Skip verification when loading Hopf algebras and systems.
    #[arg(long, global = true)]
    unchecked: bool,

    /// Largest group order accepted by exhaustive enumeration.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER, global = true)]
    max_order: usize,

    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Hopf algebra files.
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Finite groups and Rota-Baxter systems of groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Rota-Baxter systems of Hopf algebras.
    #[command(subcommand)]
    Rbs(RbsCmd),
    /// Lie algebras.
    #[command(subcommand)]
    Lie(LieCmd),
    /// Character groups and the decomposition of characters.
    #[command(subcommand)]
    Char(CharCmd),
}

#[derive(Subcommand)]
enum HopfCmd {
    /// Verify every Hopf-algebra axiom on basis elements.
    Verify { hopf: PathBuf },
    /// Write the group algebra of a group file.
    GroupAlgebra {
        group: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Verify a Cayley table.
    Verify { group: PathBuf },
    /// List every Rota-Baxter system of the group.
    Enumerate {
        group: PathBuf,
        /// Only systems with B1(1) = B2(1) = 1.
        #[arg(long)]
        fix_unit: bool,
    },
    /// Extend a system to the group algebra and write a bundle.
    Extend {
        group: PathBuf,
        b1: PathBuf,
        b2: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RbsCmd {
    /// Defining identities and the cocycle lemma.
    Check { bundle: PathBuf },
    /// Build the descendent Hopf algebra on the image of the cocycle.
    Descendent {
        bundle: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether the graph of the pair is a subbialgebra of the triple product.
    GraphCheck { bundle: PathBuf },
    /// Hopf-truss identities of the descendent operation.
    TrussCheck { bundle: PathBuf },
    /// System induced by a Rota-Baxter operator.
    FromRb { hopf: PathBuf, b: PathBuf },
    /// System induced by a twisted Rota-Baxter operator.
    Twisted {
        hopf: PathBuf,
        b: PathBuf,
        phi: PathBuf,
    },
    /// Restrictions to group-likes and primitives.
    Restrict { bundle: PathBuf },
}

#[derive(Subcommand)]
enum LieCmd {
    /// Lie axioms and both operator identities.
    Check {
        lie: PathBuf,
        b1: PathBuf,
        b2: PathBuf,
        /// Also report the variant with the bracket order of the second identity swapped.
        #[arg(long)]
        strict: bool,
    },
    /// Restrict a system to the primitive elements.
    FromPrimitives { bundle: PathBuf },
}

#[derive(Subcommand)]
enum CharCmd {
    /// Enumerate characters with values in the unit candidates.
    Enumerate {
        hopf: PathBuf,
        alg: PathBuf,
        #[arg(long)]
        units: Option<PathBuf>,
    },
    /// Decompose one character (index into the image of restriction) or all.
    Decompose {
        bundle: PathBuf,
        alg: PathBuf,
        #[arg(long)]
        units: Option<PathBuf>,
        #[arg(long = "char")]
        index: Option<usize>,
    },
    /// Every check from the induced maps through all decompositions.
    FullReport {
        bundle: PathBuf,
        alg: PathBuf,
        #[arg(long)]
        units: Option<PathBuf>,
    },
}

/// Input problems exit with 2; a refused construction is shown as a report
/// and exits with 1.
enum Failure {
    Input(anyhow::Error),
    Rejected(Report),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification { report, .. } | Error::Contradiction { report, .. } => {
                Failure::Rejected(*report)
            }
            other => Failure::Input(other.into()),
        }
    }
}

type Outcome = Result<Report, Failure>;

struct Ctx {
    unchecked: bool,
    max_order: usize,
}

impl Ctx {
    fn source(&self, path: &Path) -> anyhow::Result<Source> {
        io::read_source(path).with_context(|| format!("reading {}", path.display()))
    }

    fn hopf(
        &self,
        path: &Path,
        r: &mut Report,
    ) -> anyhow::Result<hopftruss_core::hopf::StructHopf> {
        let src = self.source(path)?;
        io::record_input(r, "hopf", &src);
        io::parse_hopf(&src.text, self.unchecked)
            .with_context(|| format!("loading {}", path.display()))
    }

    fn matrix(
        &self,
        role: &str,
        path: &Path,
        dim: usize,
        r: &mut Report,
    ) -> anyhow::Result<hopftruss_core::linalg::Mat> {
        let src = self.source(path)?;
        io::record_input(r, role, &src);
        io::parse_matrix(&src.text, Some(dim))
            .with_context(|| format!("loading {}", path.display()))
    }

    fn bundle(&self, path: &Path, r: &mut Report) -> anyhow::Result<Bundle> {
        let b = io::load_bundle(path, self.unchecked)
            .with_context(|| format!("loading bundle {}", path.display()))?;
        b.record_inputs(r);
        Ok(b)
    }

    fn system(&self, b: &Bundle) -> Result<RBSystem, Failure> {
        let s = if self.unchecked {
            RBSystem::new_unchecked(b.hopf.clone(), b.b1.clone(), b.b2.clone())?
        } else {
            RBSystem::new(b.hopf.clone(), b.b1.clone(), b.b2.clone())?
        };
        Ok(s)
    }

    fn algebra(
        &self,
        alg: &Path,
        units: Option<&Path>,
        r: &mut Report,
    ) -> anyhow::Result<(CommAlgebra, Vec<SparseVec>)> {
        let src = self.source(alg)?;
        io::record_input(r, "algebra", &src);
        let a = io::parse_comm_algebra(&src.text)
            .with_context(|| format!("loading {}", alg.display()))?;
        let units = match units {
            Some(p) => {
                let src = self.source(p)?;
                io::record_input(r, "units", &src);
                io::parse_units(&src.text, &a)
                    .with_context(|| format!("loading {}", p.display()))?
            }
            None => a.default_units(),
        };
        Ok((a, units))
    }
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: &Cli) -> Outcome {
    let ctx = Ctx {
        unchecked: cli.unchecked,
        max_order: cli.max_order,
    };
    let mut r = Report::new();
    match &cli.command {
        Command::Hopf(HopfCmd::Verify { hopf }) => {
            let src = ctx.source(hopf)?;
            io::record_input(&mut r, "hopf", &src);
            let h = io::parse_hopf(&src.text, true)
                .with_context(|| format!("loading {}", hopf.display()))?;
            r.extend(pipeline::hopf_verify(&h));
        }
        Command::Hopf(HopfCmd::GroupAlgebra { group, output }) => {
            let src = ctx.source(group)?;
            io::record_input(&mut r, "group", &src);
            let g = io::parse_group(&src.text)
                .with_context(|| format!("loading {}", group.display()))?;
            let h = group_algebra(&g);
            r.extend(pipeline::hopf_verify(&h));
            write_file(output, &io::hopf_to_json(&h))?;
        }
        Command::Group(GroupCmd::Verify { group }) => {
            let src = ctx.source(group)?;
            io::record_input(&mut r, "group", &src);
            let f = io::parse_group_file(&src.text)
                .with_context(|| format!("loading {}", group.display()))?;
            r.extend(hopftruss_core::group::verify_group_table(&f.table));
        }
        Command::Group(GroupCmd::Enumerate { group, fix_unit }) => {
            let src = ctx.source(group)?;
            io::record_input(&mut r, "group", &src);
            let g = io::parse_group(&src.text)
                .with_context(|| format!("loading {}", group.display()))?;
            let (rep, _) = pipeline::group_enumerate(&g, *fix_unit, ctx.max_order)?;
            r.extend(rep);
        }
        Command::Group(GroupCmd::Extend {
            group,
            b1,
            b2,
            output,
        }) => {
            let src = ctx.source(group)?;
            io::record_input(&mut r, "group", &src);
            let g = io::parse_group(&src.text)
                .with_context(|| format!("loading {}", group.display()))?;
            let mut endo = |role: &str, p: &Path| -> anyhow::Result<_> {
                let src = ctx.source(p)?;
                io::record_input(&mut r, role, &src);
                io::parse_endo(&src.text, &g).with_context(|| format!("loading {}", p.display()))
            };
            let e1 = endo("b1", b1)?;
            let e2 = endo("b2", b2)?;
            let s = GroupRBSystem::new(g, e1, e2)?;
            let (rep, sys) = pipeline::group_extend(&s)?;
            r.extend(rep);
            if let Some(out) = output {
                write_file(out, &io::bundle_to_json(sys.hopf(), sys.b1(), sys.b2()))?;
            }
        }
        Command::Rbs(RbsCmd::Check { bundle }) => {
            let b = ctx.bundle(bundle, &mut r)?;
            r.extend(pipeline::rbs_check(&b.hopf, &b.b1, &b.b2)?);
        }
        Command::Rbs(RbsCmd::Descendent { bundle, output }) => {
            let b = ctx.bundle(bundle, &mut r)?;
            let s = ctx.system(&b)?;
            let (rep, d) = pipeline::rbs_descendent(&s)?;
            r.extend(rep);
            if let Some(out) = output {
                write_file(out, &io::hopf_to_json(d.hopf()))?;
            }
        }
        Command::Rbs(RbsCmd::GraphCheck { bundle }) => {
            let b = ctx.bundle(bundle, &mut r)?;
            r.extend(pipeline::rbs_graph(&b.hopf, &b.b1, &b.b2));
        }
        Command::Rbs(RbsCmd::TrussCheck { bundle }) => {
            let b = ctx.bundle(bundle, &mut r)?;
            let s = ctx.system(&b)?;
            r.extend(pipeline::rbs_truss(s.hopf(), s.b1(), s.b2())?);
        }
        Command::Rbs(RbsCmd::FromRb { hopf, b }) => {
            let h = ctx.hopf(hopf, &mut r)?;
            let m = ctx.matrix("b", b, h.dim(), &mut r)?;
            r.extend(pipeline::rbs_from_rb(&h, &m)?.0);
        }
        Command::Rbs(RbsCmd::Twisted { hopf, b, phi }) => {
            let h = ctx.hopf(hopf, &mut r)?;
            let m = ctx.matrix("b", b, h.dim(), &mut r)?;
            let p = ctx.matrix("phi", phi, h.dim(), &mut r)?;
            r.extend(pipeline::rbs_twisted(&h, &m, &p));
        }
        Command::Rbs(RbsCmd::Restrict { bundle }) => {
            let b = ctx.bundle(bundle, &mut r)?;
            let s = ctx.system(&b)?;
            r.extend(pipeline::rbs_restrict(&s)?.0);
        }
        Command::Lie(LieCmd::Check {
            lie,
            b1,
            b2,
            strict,
        }) => {
            let src = ctx.source(lie)?;
            io::record_input(&mut r, "lie", &src);
            let l =
                io::parse_lie(&src.text).with_context(|| format!("loading {}", lie.display()))?;
            let m1 = ctx.matrix("b1", b1, l.dim(), &mut r)?;
            let m2 = ctx.matrix("b2", b2, l.dim(), &mut r)?;
            r.extend(pipeline::lie_check(&l, &m1, &m2, *strict));
        }
        Command::Lie(LieCmd::FromPrimitives { bundle }) => {
            let b = ctx.bundle(bundle, &mut r)?;
            r.extend(pipeline::lie_from_primitives(&b.hopf, &b.b1, &b.b2)?.0);
        }
        Command::Char(CharCmd::Enumerate { hopf, alg, units }) => {
            let h = ctx.hopf(hopf, &mut r)?;
            let (a, u) = ctx.algebra(alg, units.as_deref(), &mut r)?;
            r.extend(pipeline::char_enumerate(&h, &a, &u)?.0);
        }
        Command::Char(CharCmd::Decompose {
            bundle,
            alg,
            units,
            index,
        }) => {
            let b = ctx.bundle(bundle, &mut r)?;
            let s = ctx.system(&b)?;
            let (a, u) = ctx.algebra(alg, units.as_deref(), &mut r)?;
            let which = index.map_or(Decompose::All, Decompose::One);
            r.extend(pipeline::char_full_report(&s, &a, &u, which)?);
        }
        Command::Char(CharCmd::FullReport { bundle, alg, units }) => {
            let b = ctx.bundle(bundle, &mut r)?;
            let s = ctx.system(&b)?;
            let (a, u) = ctx.algebra(alg, units.as_deref(), &mut r)?;
            r.extend(pipeline::char_full_report(&s, &a, &u, Decompose::All)?);
        }
    }
    Ok(r)
}

fn emit(r: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", r.to_json()),
        Format::Text => print!("{}", r.to_text()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: {}", anyhow!(e));
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(r) => {
            emit(&r, cli.format);
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Rejected(r)) => {
            emit(&r, cli.format);
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
