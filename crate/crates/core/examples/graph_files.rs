//! Reading, validating and writing the JSON graph format.

use plumbing_sw::format::{parse_graph_str, serialize_graph};

fn main() {
    let text = r#"{
        "vertices": [{"id": 10, "euler": -1}, {"id": 11, "euler": -2}, {"id": 12, "euler": -3}],
        "edges": [[10, 11], [10, 12]],
        "arrows": [{"vertex": 10, "multiplicity": 1}],
        "multiplicities": {"10": 6, "11": 3, "12": 2}
    }"#;
    let g = parse_graph_str(text).expect("valid file");
    println!("{}", serialize_graph(&g));
    for bad in
        [r#"{"vertices": []}"#, r#"{"vertices": [{"id": 0, "euler": -2}], "edges": [[0, 4]]}"#, "{\"vertices\": [\n"]
    {
        match parse_graph_str(bad) {
            Ok(_) => println!("unexpectedly accepted"),
            Err(e) => println!("rejected: {e}"),
        }
    }
}
