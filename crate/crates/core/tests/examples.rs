//! Every example runs to completion.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run_example().unwrap();
        }
    };
}

example!(group_basics);
example!(e_groups);
example!(catalog);
example!(structure_series);
example!(class_membership);
example!(vstar_closure);
example!(regularity_sweep);
example!(non_f_graph_dot);
example!(steinitz_isomorphism);
