//! Drive the command layer from a RunConfig instead of the command line.

use lup::cli::{cmd_kernel, Command, Format, Grid, RunConfig};
use lup::kernels::KernelFamily;

fn main() -> lup::Result<()> {
    let mut cfg = RunConfig::new(Command::Kernel);
    cfg.family = KernelFamily::SineExtended;
    cfg.times = vec![1.0, 1.25];
    cfg.grid = Grid {
        lo: -2.0,
        hi: 2.0,
        count: 9,
    };
    cfg.x = Some(0.0);
    cfg.format = Format::Csv;
    print!("{}", cmd_kernel(&cfg)?.text);
    Ok(())
}
