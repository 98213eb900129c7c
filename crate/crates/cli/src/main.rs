use std::io::{self, BufWriter, Write};
use std::process;

fn main() {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = io::stderr().lock();
    let code = skdist_cli::run(std::env::args_os(), &mut out, &mut err);
    if out.flush().is_err() && code == 0 {
        process::exit(skdist_cli::exit::NUMERIC);
    }
    drop(out);
    process::exit(code);
}
