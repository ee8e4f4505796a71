// The plotting scripts read these files; the column names, header keys and
// float format below are the interface they depend on.

use squeezed_qsl::scan::csv::{columns, to_csv_string, CsvTable};
use squeezed_qsl::scan::{run_scan, Model, Preset, ScanConfig};

fn small(preset: Preset, rows: usize, cols: usize) -> ScanConfig {
    let mut m = preset.pairs();
    m.insert("row_count".into(), rows.to_string());
    m.insert("col_count".into(), cols.to_string());
    ScanConfig::from_map(&m).unwrap()
}

#[test]
fn jc_columns() {
    assert_eq!(
        columns(Model::Jc).join(","),
        "row,col,r,theta,gamma0,lambda,tau,tau_qsl,ratio,tight_norm,quad_error,status"
    );
}

#[test]
fn dephasing_columns() {
    assert_eq!(
        columns(Model::Dephasing).join(","),
        "row,col,r,theta,eta,s,omega_c,tau,tau_qsl,ratio,tight_norm,quad_error,\
         gamma_tau,gamma_rate_tau,min_gamma_rate,sign_at_tau,sign_min,status"
    );
}

#[test]
fn header_echoes_axes() {
    let text = to_csv_string(&run_scan(&small(Preset::Fig2, 3, 4)).unwrap());
    let table = CsvTable::parse(&text).unwrap();
    let get = |k: &str| table.config.iter().find(|(key, _)| key == k).map(|(_, v)| v.as_str());
    assert_eq!(get("model"), Some("dephasing"));
    assert_eq!(get("row_axis"), Some("theta"));
    assert_eq!(get("col_axis"), Some("s"));
    assert_eq!(get("row_bounds"), Some("[)"));
    assert_eq!(get("col_bounds"), Some("(]"));
    assert_eq!(get("row_count"), Some("3"));
    assert_eq!(get("col_count"), Some("4"));
}

#[test]
fn grid_layout_and_values() {
    let out = run_scan(&small(Preset::Fig1a, 4, 3)).unwrap();
    let table = CsvTable::parse(&to_csv_string(&out)).unwrap();
    let rows = table.column_f64("row").unwrap();
    let cols = table.column_f64("col").unwrap();
    let ratios = table.column_f64("ratio").unwrap();
    let grid = out.ratio_grid();
    for k in 0..12 {
        assert_eq!((rows[k], cols[k]), ((k / 3) as f64, (k % 3) as f64));
        assert_eq!(ratios[k], grid[k / 3][k % 3]);
        assert!(ratios[k] > 0.0 && ratios[k] <= 1.0 + 1e-12);
    }
    let theta = table.column_f64("theta").unwrap();
    assert_eq!(theta[3], std::f64::consts::FRAC_PI_2);
}

#[test]
fn signs_are_words() {
    let table = CsvTable::parse(&to_csv_string(&run_scan(&small(Preset::Fig2, 4, 4)).unwrap())).unwrap();
    let allowed = ["positive", "negative", "boundary"];
    for col in ["sign_at_tau", "sign_min"] {
        assert!(table.column_str(col).unwrap().iter().all(|s| allowed.contains(s)));
    }
    let tight = table.column_str("tight_norm").unwrap();
    assert!(tight.iter().all(|s| *s == "op"));
}

#[test]
fn failed_points_are_nan_rows() {
    let mut m = Preset::Fig1b.pairs();
    m.insert("row_count".into(), "2".into());
    m.insert("col_count".into(), "2".into());
    m.insert("max_subdivisions".into(), "1".into());
    m.insert("abs_tol".into(), "1e-300".into());
    m.insert("rel_tol".into(), "1e-300".into());
    let table = CsvTable::parse(&to_csv_string(&run_scan(&ScanConfig::from_map(&m).unwrap()).unwrap())).unwrap();
    assert_eq!(table.rows.len(), 4);
    assert!(table.column_f64("ratio").unwrap().iter().all(|r| r.is_nan()));
    assert!(table.column_str("status").unwrap().iter().all(|s| s.starts_with("error: ")));
}
