# kleene.py - 参照用のレジスタ機械と Kleene の T・U（オブジェクト言語版との照合用）
import logging
from dataclasses import dataclass

from syntax import App, Ident, numeral

logger = logging.getLogger(__name__)

# 命令: 0 = HALT, 1 = INC, 2 = DEC, 3 + j = JZ j（acc が 0 なら pc := j）
HALT, INC, DEC, JZ = 0, 1, 2, 3


def pair(a, b):
    """Cantor の対関数（対角線ごとに (d,0), (d-1,1), …, (0,d) の順）"""
    d = a + b
    return d * (d + 1) // 2 + b


def next_pair(a, b):
    return (b + 1, 0) if a == 0 else (a - 1, b + 1)


def unpair(z):
    """pair の逆。オブジェクト言語と同じく (0,0) から z 回たどる"""
    a, b = 0, 0
    for _ in range(z):
        a, b = next_pair(a, b)
    return a, b


def encode_program(instructions):
    """命令の列を符号にする（末尾は 0 = HALT が無限に続くとみなす）"""
    code = 0
    for op in reversed(instructions):
        code = pair(op, code)
    return code


def instruction(e, pc):
    code = e
    for _ in range(pc):
        code = unpair(code)[1]
    return unpair(code)[0]


@dataclass(frozen=True)
class State:
    pc: int
    acc: int
    halted: bool


def step(e, state):
    """1 ステップ実行する。停止状態は動かない"""
    if state.halted:
        return state
    op = instruction(e, state.pc)
    if op == HALT:
        return State(state.pc, state.acc, True)
    if op == INC:
        return State(state.pc + 1, state.acc + 1, False)
    if op == DEC:
        return State(state.pc + 1, max(state.acc - 1, 0), False)
    target = op - JZ
    if state.acc == 0:
        return State(target, state.acc, False)
    return State(state.pc + 1, state.acc, False)


def run(e, x, steps):
    """入力 x から steps ステップ実行した状態"""
    state = State(0, x, False)
    for _ in range(steps):
        state = step(e, state)
    return state


def halting_time(e, x, fuel):
    """
    停止するまでのステップ数（fuel 以内に止まらなければ None）

    k ステップ後に停止状態で、k-1 ステップ後はまだ停止していない k。
    """
    state = State(0, x, False)
    for k in range(fuel + 1):
        if state.halted:
            return k
        state = step(e, state)
    return None


def kleene_t(e, x, z):
    """T(e, x, z): z = pair(k, y) で、ちょうど k ステップで停止し出力が y"""
    k, y = unpair(z)
    final = run(e, x, k)
    if not final.halted or final.acc != y:
        return False
    return k == 0 or not run(e, x, k - 1).halted


def kleene_u(z):
    return unpair(z)[1]


@dataclass(frozen=True)
class Triple:
    """照合用の (機械, 入力, 計算の符号) と期待値"""
    e: int
    x: int
    z: int
    expected: bool


def triples(max_code=12, max_input=3, fuel=8):
    """
    照合用の三つ組を生成する

    停止する計算ごとに正しい z（真）と、ステップ数か出力をずらした z（偽）を
    作る。fuel 以内に止まらない計算には小さな z をいくつか（全て偽）作る。

    Returns:
        list: Triple のリスト
    """
    found = []
    for e in range(max_code + 1):
        for x in range(max_input + 1):
            k = halting_time(e, x, fuel)
            if k is None:
                for z in range(0, 6):
                    found.append(Triple(e, x, z, kleene_t(e, x, z)))
                continue
            y = run(e, x, k).acc
            found.append(Triple(e, x, pair(k, y), True))
            found.append(Triple(e, x, pair(k, y + 1), False))
            found.append(Triple(e, x, pair(k + 1, y), False))
    logger.debug(f"照合用の三つ組を {len(found)} 個生成しました")
    return found


def t_term(e, x, z):
    """オブジェクト言語の T e x z"""
    return App(App(App(Ident("T"), numeral(e)), numeral(x)), numeral(z))


def u_term(z):
    return App(Ident("U"), numeral(z))
