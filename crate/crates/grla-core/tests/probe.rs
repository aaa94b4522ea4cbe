use grla_core::bs_oracle::crosscheck;
use grla_core::grading::{Family, GradingSpec};
use std::io::Write;
use std::time::Instant;

#[test]
fn probe_heavy_specs() {
    let t_all = Instant::now();
    for (f, o, p, q) in [
        (Family::A, 3usize, 0usize, 0usize),
        (Family::A, 3, 0, 1),
        (Family::A, 3, 1, 0),
        (Family::A, 5, 0, 0),
        (Family::A, 5, 0, 1),
        (Family::A, 5, 1, 0),
        (Family::A, 5, 1, 1),
        (Family::A, 5, 0, 2),
        (Family::C, 2, 0, 0),
        (Family::C, 4, 0, 0),
        (Family::C, 4, 0, 1),
        (Family::C, 4, 1, 0),
        (Family::C, 6, 0, 0),
        (Family::C, 6, 0, 1),
        (Family::C, 6, 1, 0),
        (Family::C, 6, 1, 1),
        (Family::BD, 2, 0, 0),
        (Family::BD, 2, 0, 1),
        (Family::BD, 2, 1, 0),
        (Family::BD, 4, 0, 0),
        (Family::BD, 4, 0, 1),
        (Family::BD, 4, 1, 0),
        (Family::BD, 4, 1, 1),
        (Family::BD, 4, 0, 2),
        (Family::BD, 4, 2, 0),
        (Family::BD, 6, 0, 0),
        (Family::BD, 6, 0, 1),
        (Family::BD, 6, 1, 0),
        (Family::BD, 6, 1, 1),
        (Family::BD, 6, 0, 2),
        (Family::BD, 6, 2, 0),
        (Family::BD, 6, 1, 2),
        (Family::BD, 6, 2, 1),
    ] {
        let s = GradingSpec::new(f, o, p, q, 1).unwrap();
        let t = Instant::now();
        let rep = crosscheck(&s).unwrap();
        writeln!(
            std::io::stderr(),
            "{s}: dim={} deg={} matched={:?} flagged={} ratio={:?} in {:.1?}",
            s.dim_g1(), s.m_zero(), rep.matched, rep.closed_form_flagged,
            rep.scalar_ratio.as_ref().map(|r| r.to_string()), t.elapsed()
        ).unwrap();
        assert!(rep.matched != Some(false), "MISMATCH for {s}");
    }
    writeln!(std::io::stderr(), "total {:.1?}", t_all.elapsed()).unwrap();
}
