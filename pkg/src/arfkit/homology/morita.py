"""The trace chain equivalence between M_m(R) and R with its explicit
homotopy chi_n = (-1)^(n+1) sum_k gamma^k s."""
from __future__ import annotations

from .algebras import AlgebraError
from .chains import t_add, t_scale, tensor_list


def _require_matrix(A):
    if not hasattr(A, "base"):
        raise AlgebraError("expected an algebra built by matrix_algebra")


def trace_chain(A, k, chain):
    """Tr: A^k -> R^k, summing matrix entries along index cycles."""
    _require_matrix(A)
    R, m = A.base, A.msize
    p = R.p
    out = {}
    for key, c in chain.items():
        entries = [A.base_basis[t] for t in key]  # (i, j, s)
        # fold the chain of matrix indices: need j_t = i_(t+1) cyclically
        def rec(pos, prev_j, first_i, acc_key):
            nonlocal out
            if pos == k:
                if prev_j == first_i:
                    out[acc_key] = (out.get(acc_key, 0) + c) % p
                return
            i, j, s = entries[pos]
            if pos == 0:
                rec(1, j, i, (s,))
            else:
                if i == prev_j:
                    rec(pos + 1, j, first_i, acc_key + (s,))
        rec(0, None, None, ())
    return {kk: cc for kk, cc in out.items() if cc}


def iota_chain(A, k, chain):
    """iota: R^k -> A^k placing everything in the (1,1) corner."""
    _require_matrix(A)
    idx = A.base_index
    out = {}
    for key, c in chain.items():
        out[tuple(idx[(0, 0, s)] for s in key)] = c % A.p
    return {kk: cc for kk, cc in out.items() if cc}


def s_append_unit(A, chain):
    _require_matrix(A)
    out = {}
    unit = A.unit
    for key, c in chain.items():
        for i, a in enumerate(unit):
            if a:
                k2 = key + (i,)
                out[k2] = (out.get(k2, 0) + c * a) % A.p
    return {kk: cc for kk, cc in out.items() if cc}


def gamma_op(A, k, chain):
    """gamma(x_1 (x) ... (x) x_k) =
    (-1)^k sum_i E_i1 (x) E_1i x_k x_1 (x) x_2 (x) ... (x) x_(k-1)."""
    _require_matrix(A)
    R, m = A.base, A.msize
    p = A.p
    idx = A.base_index
    sgn = (-1) ** k
    out = {}
    unit_slots = [s for s, c in enumerate(R.unit) if c]
    for key, c in chain.items():
        xk_x1 = A.mul(A.basis_vec(key[-1]), A.basis_vec(key[0]))
        mids = [A.basis_vec(t) for t in key[1:-1]]
        for i in range(m):
            first = A.zero_vec()
            for s in unit_slots:
                first = A.add(first, A.scale(A.basis_vec(idx[(i, 0, s)]), R.unit[s]))
            second = A.zero_vec()
            for s in unit_slots:
                e1i = A.scale(A.basis_vec(idx[(0, i, s)]), R.unit[s])
                second = A.add(second, A.mul(e1i, xk_x1))
            for kk, cc in tensor_list(A, [first, second] + mids).items():
                out[kk] = (out.get(kk, 0) + sgn * c * cc) % p
    return {kk: cc for kk, cc in out.items() if cc}


def chi(A, k, chain):
    """chi_k: A^k -> A^(k+1)."""
    p = A.p
    out = {}
    cur = s_append_unit(A, chain)
    sgn = (-1) ** (k + 1)
    for _ in range(k):
        cur = gamma_op(A, k + 1, cur)
        out = t_add(p, out, cur)
    return t_scale(p, out, sgn)
