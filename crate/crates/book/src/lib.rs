//! Runs the code listings of the guide in `book/` as doctests. mdbook cannot
//! link against workspace crates, so each chapter becomes a module here and
//! `cargo test --doc` does the work.

macro_rules! chapters {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub mod $name {}
        )*
    };
}

chapters! {
    introduction => "introduction.md",
    exponents => "exponents.md",
    laws => "laws.md",
    geometric_maxima => "geometric-maxima.md",
    extremal_processes => "extremal-processes.md",
    max_ar1 => "max-ar1.md",
    verification => "verification.md",
    cli => "cli.md",
}
