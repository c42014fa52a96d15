use super::eigen::SpectrumReport;

/// `index,eigenvalue,residual` with LF line endings and 17 significant digits.
pub fn spectrum_csv(report: &SpectrumReport) -> String {
    let mut out = String::from("index,eigenvalue,residual\n");
    for (i, (v, r)) in report.eigenvalues.iter().zip(&report.residuals).enumerate() {
        out.push_str(&format!("{i},{v:.16e},{r:.16e}\n"));
    }
    out
}
