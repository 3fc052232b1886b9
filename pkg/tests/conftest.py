from bipareto import GenSpec, generate_instance


def make_instances(seed, count, n_range, p_range=(1, 20), q_range=(1, 20)):
    """Deterministic test instances drawn from the package's own generator."""
    spec = GenSpec(n_range, p_range, q_range, seed, count)
    return [generate_instance(spec, i) for i in range(count)]
