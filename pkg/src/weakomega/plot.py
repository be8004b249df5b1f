"""Bar charts of equivalence data, written to image files."""


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def plot_eq_table(table, path):
    """Cells, elementary equivalences, internal equivalences and contractions per dimension."""
    plt = _pyplot()
    m = table.magma
    dims = list(range(m.trunc_dim + 1))
    series = [("cells", [len(m.cells(d)) for d in dims]),
              ("el", [len(table.el.get(d, ())) for d in dims]),
              ("Eq", [len(table.eq.get(d, ())) for d in dims]),
              ("Contr", [len(table.contr.get(d, ())) for d in dims])]
    width = 0.8 / len(series)
    fig, ax = plt.subplots(figsize=(5, 3))
    for k, (label, ys) in enumerate(series):
        ax.bar([d + k * width for d in dims], ys, width, label=label)
    ax.set_xticks([d + 0.4 - width / 2 for d in dims])
    ax.set_xticklabels([str(d) for d in dims])
    ax.set_xlabel("dimension")
    ax.set_ylabel("count")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_classes(classes, path):
    """Size of each Π class."""
    plt = _pyplot()
    labels = [",".join(sorted(map(str, c))) for c in classes]
    fig, ax = plt.subplots(figsize=(max(3, len(classes)), 3))
    ax.bar(range(len(classes)), [len(c) for c in classes])
    ax.set_xticks(range(len(classes)))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.set_ylabel("0-cells")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
