use anyhow::{bail, Context, Result};
use clap::Args;
use wrep_core::{BlockSet, SetDocument};

/// A set given as a JSON file path, `-` for stdin, or inline JSON.
#[derive(Args, Debug)]
pub struct SetArg {
    #[arg(long = "set", value_name = "PATH|JSON")]
    pub set: Option<String>,
}

impl SetArg {
    pub fn is_given(&self) -> bool {
        self.set.is_some()
    }

    pub fn load(&self) -> Result<BlockSet> {
        let text = match self.set.as_deref() {
            None => bail!("no set given (use --set PATH or --set '{{...}}')"),
            Some("-") => std::io::read_to_string(std::io::stdin())?,
            Some(s) if s.trim_start().starts_with('{') => s.to_string(),
            Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {p}"))?,
        };
        let doc: SetDocument = serde_json::from_str(&text).context("parsing set document")?;
        Ok(BlockSet::from_document(&doc)?)
    }
}
