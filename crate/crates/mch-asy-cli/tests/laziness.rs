use std::path::Path;

use mch_asy::region3::geometry_count;
use mch_asy_cli::{parse_config, run_scan, Mode};

#[test]
fn region1_scan_never_builds_shock_geometry() {
    let c =
        parse_config("[scattering]\nkappa_r = 1.0\nbeta = 0.5\n[scan]\nt = [1e4, 1e6]\ns = [-0.2, 0.0, 0.2, 5.0]\n")
            .unwrap();
    let data = c.scattering_data(Path::new(".")).unwrap();
    let before = geometry_count();
    let table = run_scan(&c, &data, Mode::Region1).unwrap();
    assert_eq!(table.rows.len(), 8);
    assert_eq!(geometry_count(), before);

    let shock = parse_config("[scattering]\nkappa_r = 1.0\nbeta = 0.5\n[scan]\nwindow = [3.5]\n").unwrap();
    run_scan(&shock, &data, Mode::Region3).unwrap();
    assert_eq!(geometry_count(), before + 1);
}
