// A two-axis grid over interaction time and cavity decay, written as CSV
// and read back.

use jc_capacity::sweep::{
    read_csv, run_capacity, run_sweep, write_records, Mode, OutputFormat, Param, ParamSet, SweepSpec,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SweepSpec {
        mode: Mode::Decayed,
        axes: vec!["kappa:0:0.4:3".parse()?, "t:0.5:2.5:5".parse()?],
        fixed: ParamSet::new().with(Param::G, 1.0).with(Param::Delta, 0.0),
    };
    let records = run_sweep(&spec, 0)?;
    let mut csv = Vec::new();
    write_records(&mut csv, &records, OutputFormat::Csv, None)?;
    print!("{}", String::from_utf8(csv.clone())?);

    for row in read_csv(csv.as_slice())? {
        let again = run_capacity(row.mode, &row.params)?;
        assert!((again.q - row.q).abs() <= 1e-12);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
