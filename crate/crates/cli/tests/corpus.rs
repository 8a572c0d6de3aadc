mod support;

use lts_cli::doc::{emit, parse};
use support::{corpus_dir, generate};

/// Set `LTS_WRITE_CORPUS=1` to rewrite the committed files from the generator.
#[test]
fn committed_corpus_matches_the_generator() {
    let write = std::env::var_os("LTS_WRITE_CORPUS").is_some();
    if write {
        std::fs::create_dir_all(corpus_dir()).unwrap();
    }
    for (name, doc) in generate() {
        let text = emit(&doc);
        let path = corpus_dir().join(name);
        if write {
            std::fs::write(&path, &text).unwrap();
        }
        let committed = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(committed == text, "{name} is stale; regenerate with LTS_WRITE_CORPUS=1");
    }
}

#[test]
fn corpus_documents_round_trip() {
    for (name, doc) in generate() {
        let text = emit(&doc);
        let parsed = parse(&text).unwrap_or_else(|e| panic!("{name}: {e:?}"));
        assert_eq!(parsed, doc, "{name}");
        assert_eq!(emit(&parsed), text, "{name}");
    }
}
