//! Writes an operator document, reads it back and compares.

use commuting_ops::coeffring::{QuadField, Scalar};
use commuting_ops::families::{example1_m, ExampleParams, Transcription};
use commuting_ops::io;

fn main() -> commuting_ops::Result<()> {
    let p = ExampleParams::new(Scalar::int(1), Scalar::int(2), Scalar::int(3));
    let m = example1_m(&p, Transcription::Corrected);
    let field = QuadField::gaussian();

    let text = io::render(&m, Some(&field))?;
    println!("{} bytes, first lines:", text.len());
    for line in text.lines().take(8) {
        println!("  {line}");
    }
    let (back, session) = io::parse(&text)?;
    println!("round trip equal: {}", back == m);
    println!("session field: Q(sqrt({}))", session.map(|f| f.d().to_string()).unwrap_or_default());
    Ok(())
}
