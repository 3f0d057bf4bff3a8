from limgrp.cli import run

run()
