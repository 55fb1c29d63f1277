//! Resolving loop arguments: Cayley files, `-` for stdin, or preset names.

use std::fs;
use std::io::Read;
use std::path::Path;

use loopforge::catalog;
use loopforge::inverse::right_inverse_permutation;
use loopforge::io::parse_cayley;
use loopforge::perm::Permutation;
use loopforge::quasigroup::Loop;
use loopforge::{Error, Result};

pub fn read_text(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(arg)?)
    }
}

/// A file path (or `-`) is parsed as a Cayley file; anything else must name
/// a built-in preset, which gets `J = x\δ`.
pub fn load_loop(arg: &str) -> Result<(Loop, Permutation)> {
    if arg == "-" || Path::new(arg).is_file() {
        return parse_cayley(&read_text(arg)?)?.into_loop();
    }
    match catalog::loop_preset(arg) {
        Some(l) => {
            let j = right_inverse_permutation(&l);
            Ok((l, j))
        }
        None => Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("{arg:?} is neither a file nor a preset ({})", catalog::preset_names().join(", ")),
        ))),
    }
}
