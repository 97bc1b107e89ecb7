from typing import Literal

GeneratorVerdict = Literal["generator", "not_generator", "not_applicable"]
SpectrumName = Literal["MTU", "MTU_rel", "MTUbar"]
OutputFormat = Literal["text", "json"]
