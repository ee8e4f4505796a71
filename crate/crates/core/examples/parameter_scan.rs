// A small preset sweep written as CSV and read back.

use std::error::Error;

use squeezed_qsl::scan::csv::{to_csv_string, CsvTable};
use squeezed_qsl::scan::{run_scan, Preset, ScanConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut pairs = Preset::Fig1a.pairs();
    pairs.insert("row_count".into(), "4".into());
    pairs.insert("col_count".into(), "3".into());
    let config = ScanConfig::from_map(&pairs)?;

    let output = run_scan(&config)?;
    let text = to_csv_string(&output);
    print!("{text}");

    let table = CsvTable::parse(&text)?;
    let ratios = table.column_f64("ratio")?;
    let worst = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    println!("{} points, smallest ratio {worst:.6}", table.rows.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
