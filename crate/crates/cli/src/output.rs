use crate::args::Format;
use anyhow::Result;
use serde_json::Value;
use wrep_core::BlockSet;

pub struct Emitter {
    format: Format,
}

impl Emitter {
    pub fn new(format: Format) -> Self {
        Emitter { format }
    }

    /// JSON document in json mode, the human rendering otherwise. Csv falls
    /// back to json for documents without a tabular form.
    pub fn value(&self, doc: &Value, human: impl FnOnce() -> String) -> Result<()> {
        match self.format {
            Format::Human => println!("{}", human()),
            Format::Json | Format::Csv => println!("{}", serde_json::to_string_pretty(doc)?),
        }
        Ok(())
    }

    /// Set documents are always written in their canonical JSON form.
    pub fn set_document(&self, set: &BlockSet) -> Result<()> {
        println!("{}", serde_json::to_string(&set.to_document())?);
        Ok(())
    }
}
