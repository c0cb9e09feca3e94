//! Runs the built-in checks of the published worked examples.

fn main() {
    let checks = plumbing_sw::selftest::run();
    print!("{}", plumbing_sw::selftest::render(&checks));
    if checks.iter().any(|c| !c.passed) {
        std::process::exit(1);
    }
}
