if __name__ == "__main__":
    from rinehart import cli

    cli.main()
