//! Writing a quadruple to the text format and reading it back.

use flowforge::fixtures::instance_a;
use flowforge::format::write_atomic;
use flowforge::{read_quadruple, write_quadruple};

fn main() -> flowforge::Result<()> {
    let q = instance_a([3, 2, 3, 1, 1, 1]);
    let text = write_quadruple("instance-a", &q);
    print!("{text}");
    let path = std::env::temp_dir().join("instance-a.graph");
    write_atomic(&path, &text)?;
    assert_eq!(read_quadruple(&path)?, q);
    println!("# round trip through {} ok", path.display());
    Ok(())
}
