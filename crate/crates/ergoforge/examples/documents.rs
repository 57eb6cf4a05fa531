//! Reading the text documents the command-line tool consumes, and running it in-process.

use std::path::Path;

use ergoforge::cli::execute;
use ergoforge::io::{ActionDoc, Document, Kind};

fn main() -> ergoforge::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let doc = Document::read(&dir.join("f2_three.action.txt"))?;
    let action = doc.decode::<ActionDoc>(Kind::Action)?.build()?;
    println!("{} document: {} points, rank {}", doc.kind.name(), action.len(), action.ctx.rank());
    print!("{}", doc.emit());

    let args = ["ergoforge", "cocycle", "defect"]
        .into_iter()
        .map(String::from)
        .chain(["f2_three.action.txt", "f2_broken.cochain.txt"].iter().map(|f| dir.join(f).display().to_string()));
    let (code, out, err) = execute(args);
    println!("exit code {code}");
    print!("{out}{err}");
    Ok(())
}
