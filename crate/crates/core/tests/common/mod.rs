use topotutte::corpus::{self, CorpusEntry};

/// Named examples plus a smaller random sample than the acceptance run.
pub fn sample() -> Vec<CorpusEntry> {
    let mut out = corpus::named();
    out.extend(corpus::generate(91, 80, 8));
    out
}
