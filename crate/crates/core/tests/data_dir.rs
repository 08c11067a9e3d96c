use curvecount::datasets::{load_example, DATA_DIR_ENV};
use curvecount::{Error, GvTable};

#[test]
fn data_directory_override() {
    let dir = std::env::temp_dir().join(format!("curvecount-data-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("local_p1.gv"),
        "rank 1\nweights 1\nbeta=[1] g=0 n=2\n",
    )
    .unwrap();
    std::env::set_var(DATA_DIR_ENV, &dir);
    let model = load_example("local_p1").unwrap();
    assert_eq!(model.table, GvTable::rank_one(&[(1, 0, 2)]));
    assert!(matches!(load_example("local_elliptic"), Err(Error::Io(_))));
    std::env::remove_var(DATA_DIR_ENV);
    assert_eq!(
        load_example("local_p1").unwrap().table,
        GvTable::rank_one(&[(1, 0, 1)])
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
